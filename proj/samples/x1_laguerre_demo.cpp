// Builds the first X1-Laguerre polynomials, checks their orthogonality under the extended weight, and
// compares the analytic and finite-difference spectra of the radial model they belong to.

#include <iostream>

#include "ratext/io.hpp"
#include "ratext/spectral.hpp"

int main() {
    using namespace ratext;

    const Rational alpha(3, 2);
    ExceptionalFamily<Rational> fam{ExceptionalKind::X1Laguerre, alpha, Rational(0)};
    for (int nu = 0; nu < 4; ++nu) std::cout << "Lhat_" << nu + 1 << " = " << to_string(exceptional_polynomial(fam, nu)) << '\n';

    ExceptionalFamily<double> famd{ExceptionalKind::X1Laguerre, to_double(alpha), 0.0};
    std::cout << "gram leakage (6 members): " << io::format_real(relative_leakage(polynomial_gram(famd, 6))) << '\n';

    // alpha = l + 1/2 with l = 1
    PotentialModel m = make_model({Family::ExtRadialLinear, 1.0, 1.0});
    auto rep = fd_eigensolve(m, default_grid(m, 4000), 4, EnergyOrigin::Bare);
    std::cout << m.describe() << '\n';
    for (int k = 0; k < 4; ++k)
        std::cout << "  E_" << k << "  analytic " << io::format_real((*rep.analytic_reference)[k]) << "  fd "
                  << io::format_real(rep.eigenvalues[k]) << '\n';
    return 0;
}
