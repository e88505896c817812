#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "jet.hpp"
#include "orthopoly.hpp"
#include "potentials.hpp"
#include "special.hpp"
#include "xpoly.hpp"

namespace ratext {

/**
 * psi(x) = norm * prefactor(x) * poly(z) / denom(z).
 * Radial: prefactor x^left_power e^{-omega x^2/4}, z = omega x^2 / 2.
 * Scarf:  prefactor (1 - sin x)^right_power (1 + sin x)^left_power, z = sin x.
 */
struct WavefunctionSpec {
    int level = 0;
    double energy = 0.0;  // eigenvalue of -d2 + V + additive_constant
    DomainKind domain = DomainKind::HalfLine;
    double omega = 0.0;
    double left_power = 0.0;
    double right_power = 0.0;
    DPoly poly{1.0};
    DPoly denom{1.0};
    double norm = 1.0;
    std::string label;

    double lower() const { return domain == DomainKind::HalfLine ? 0.0 : -std::numbers::pi / 2; }
    double upper() const {
        return domain == DomainKind::HalfLine ? std::numeric_limits<double>::infinity() : std::numbers::pi / 2;
    }
};

/// Relative tolerance for unit normalization.
inline constexpr double kNormalizationTol = 1e-8;

namespace detail {

/// Sign of p just to the right of z0 (first nonvanishing derivative).
inline double sign_right_of(const DPoly& p, double z0) {
    DPoly d = p;
    while (!d.is_zero()) {
        double v = d(z0);
        if (std::abs(v) > 1e-300) return v > 0 ? 1.0 : -1.0;
        d = d.derivative();
    }
    return 1.0;
}

inline double z_of(const WavefunctionSpec& wf, double x) {
    return wf.domain == DomainKind::HalfLine ? 0.5 * wf.omega * x * x : std::sin(x);
}

/// Classical weight whose Gauss rule integrates products of these wavefunctions, in z.
inline ClassicalFamily<double> quadrature_weight(const WavefunctionSpec& wf) {
    if (wf.domain == DomainKind::HalfLine) return ClassicalFamily<double>::laguerre(wf.left_power - 0.5);
    return ClassicalFamily<double>::jacobi(2 * wf.right_power - 0.5, 2 * wf.left_power - 0.5);
}

/// Jacobian factor relating the Gauss sum in z to the integral over x, for products of two wavefunctions.
inline double measure_factor(const WavefunctionSpec& wf) {
    if (wf.domain == DomainKind::HalfLine)
        return std::pow(2.0 / wf.omega, wf.left_power) / std::sqrt(2.0 * wf.omega);
    return 1.0;
}

inline bool same_measure(const WavefunctionSpec& a, const WavefunctionSpec& b) {
    return a.domain == b.domain && a.omega == b.omega && a.left_power == b.left_power &&
           a.right_power == b.right_power;
}

constexpr int kMaxQuadratureNodes = 256;

/// Gauss sum of f over the weight, doubling the node count from n0 until two sums agree to 1e-14.
template <class F>
double adaptive_gauss(const ClassicalFamily<double>& w, int n0, F&& f) {
    int n = std::min(n0, kMaxQuadratureNodes);
    double prev = gauss_rule(w, n).integrate(f);
    while (n < kMaxQuadratureNodes) {
        n = std::min(2 * n, kMaxQuadratureNodes);
        double cur = gauss_rule(w, n).integrate(f);
        if (std::abs(cur - prev) <= 1e-14 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace detail

/// Integral of psi_a psi_b over the domain. Both must share the prefactor (same model).
inline double overlap(const WavefunctionSpec& a, const WavefunctionSpec& b) {
    if (!detail::same_measure(a, b)) throw UsageError("overlap needs wavefunctions of the same model");
    int deg = std::max(a.poly.degree(), b.poly.degree()) + std::max(a.denom.degree(), b.denom.degree());
    auto f = [&](double z) { return a.poly(z) * b.poly(z) / (a.denom(z) * b.denom(z)); };
    return a.norm * b.norm * detail::measure_factor(a) *
           detail::adaptive_gauss(detail::quadrature_weight(a), 2 * deg + 16, f);
}

inline double normalization_integral(const WavefunctionSpec& wf) { return overlap(wf, wf); }

/// psi at x for S = double or a Jet.
template <class S>
S wavefunction_at(const WavefunctionSpec& wf, const S& x) {
    using std::exp;
    using std::pow;
    using std::sin;
    const double xv = value_of(x);
    if (!(xv > wf.lower() && xv < wf.upper()))
        throw DomainError("x = " + detail::fmt(xv) + " outside the open domain of the wavefunction");
    if (wf.domain == DomainKind::HalfLine) {
        S z = x * x * (0.5 * wf.omega);
        return pow(x, wf.left_power) * exp(z * (-0.5)) * wf.poly(z) / wf.denom(z) * wf.norm;
    }
    S s = sin(x);
    return pow(S(1.0) - s, wf.right_power) * pow(S(1.0) + s, wf.left_power) * wf.poly(s) / wf.denom(s) * wf.norm;
}

inline double eval_wavefunction(const WavefunctionSpec& wf, double x) { return wavefunction_at(wf, x); }

inline double first_derivative(const WavefunctionSpec& wf, double x) {
    return wavefunction_at(wf, Jet4::variable(x)).derivative(1);
}

/// psi'' by forward-mode Taylor arithmetic on the closed form (exact up to rounding).
inline double second_derivative(const WavefunctionSpec& wf, double x) {
    return wavefunction_at(wf, Jet4::variable(x)).derivative(2);
}

namespace detail {

inline double half_exp(double log_v) { return std::exp(0.5 * log_v); }

/// ln of the published normalization constant squared for level `level`, or NaN when it is numeric only.
inline double log_norm_sq(const PotentialModel& m, int level) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double ln2 = std::numbers::ln2;
    const double lg = std::log(m.omega);
    const double l = m.l, A = m.A, B = m.B;
    auto lgam = [](double v) { return log_gamma(v); };
    switch (m.family) {
        case Family::RadialOsc: {
            double n = level;
            return (l + 1.5) * std::log(m.omega / 2) + ln2 + lgam(n + 1) - lgam(n + l + 1.5);
        }
        case Family::ExtRadialLinear: {
            double n = level;
            return (l + 1.5) * lg + lgam(n + 1) - (l - 1.5) * ln2 - std::log(n + l + 1.5) - lgam(n + l + 0.5);
        }
        case Family::ExtRadialQuad: {
            double n = level;
            switch (m.qcase) {
                case QuadCase::I:
                    return (l + 1.5) * lg + lgam(n + 1) - (l - 3.5) * ln2 - std::log(n + l + 2.5) - lgam(n + l + 0.5);
                case QuadCase::II:
                    return (l + 1.5) * lg + lgam(n + 1) - (l - 3.5) * ln2 - std::log(n + l + 1.5) -
                           std::log(n + l + 0.5) - lgam(n + l - 0.5);
                case QuadCase::III:
                    if (level == 0) return nan;
                    n = level - 1;
                    return (l + 1.5) * lg + lgam(n + 1) + std::log(n + 3) - (l - 3.5) * ln2 - lgam(n + l + 2.5);
            }
            return nan;
        }
        case Family::Scarf1: {
            double n = level;
            return std::log(2 * A + 2 * n) + lgam(n + 1) + lgam(2 * A + n) - 2 * A * ln2 - lgam(A - B + n + 0.5) -
                   lgam(A + B + n + 0.5);
        }
        case Family::ExtScarfLinear: {
            double n = level;
            return 2 * std::log(std::abs(B)) - 2 * (A - 2) * ln2 + std::log(2 * A + 2 * n) + lgam(n + 1) +
                   lgam(2 * A + n) - std::log(A - B + n + 0.5) - std::log(A + B + n + 0.5) - lgam(A - B + n - 0.5) -
                   lgam(A + B + n - 0.5);
        }
        case Family::ExtScarfQuad: {
            double n = level;
            double common = std::log(2 * A + 2 * n) + lgam(n + 1) + lgam(2 * A + n);
            switch (m.qcase) {
                case QuadCase::I:
                    return 2 * std::log(std::abs((B - 1) * (B - 1) * (2 * B - 1))) - 2 * (A - 4) * ln2 + common -
                           std::log(A - B + n + 1.5) - std::log(A + B + n + 0.5) - std::log(A + B + n - 0.5) -
                           lgam(A - B + n - 0.5) - lgam(A + B + n - 1.5);
                case QuadCase::II:
                    return 2 * std::log(std::abs((B + 1) * (B + 1) * (2 * B + 1))) - 2 * (A - 4) * ln2 + common -
                           std::log(A - B + n + 0.5) - std::log(A - B + n - 0.5) - std::log(A + B + n + 1.5) -
                           lgam(A - B + n - 1.5) - lgam(A + B + n - 0.5);
                case QuadCase::III:
                    if (level == 0) return nan;
                    n = level - 1;
                    return 2 * std::log(std::abs((A - 1) * (2 * A - 3) * (2 * A - 3))) - 2 * (A - 3) * ln2 +
                           std::log(2 * A + n - 1) + std::log(2 * A + 2 * n + 2) + lgam(n + 1) + lgam(2 * A + n + 2) -
                           std::log(n + 3) - lgam(A - B + n + 1.5) - lgam(A + B + n + 1.5);
            }
            return nan;
        }
    }
    return nan;
}

inline DPoly radial_denominator(const PotentialModel& m) {
    // written in z = omega x^2 / 2, so omega x^2 = 2z
    const double l = m.l;
    if (m.family == Family::ExtRadialLinear) return DPoly{2 * l + 1, 2.0};
    if (m.family != Family::ExtRadialQuad) return DPoly{1.0};
    switch (m.qcase) {
        case QuadCase::I: {
            double g = 2 * l + 3;
            return DPoly{g * g - 2 * g, 4 * g, 4.0};
        }
        case QuadCase::II: {
            double g = 2 * l - 1;
            return DPoly{g * g + 2 * g, 4 * g, 4.0};
        }
        case QuadCase::III: {
            double g = 2 * l - 1;
            return DPoly{g * g + 2 * g, -4 * g, 4.0};
        }
    }
    return DPoly{1.0};
}

}  // namespace detail

/// Normalized bound state `level` of the model (levels counted from the ground state of V^(-)).
inline WavefunctionSpec eigenfunction(const PotentialModel& m, int level) {
    if (level < 0) throw UsageError("level must be >= 0");
    WavefunctionSpec wf;
    wf.level = level;
    wf.domain = m.domain;
    wf.energy = analytic_spectrum(m, level + 1).back();
    if (m.is_radial()) {
        wf.omega = m.omega;
        wf.left_power = m.l + 1;
        wf.denom = detail::radial_denominator(m);
    } else {
        wf.right_power = (m.A - m.B) / 2;
        wf.left_power = (m.A + m.B) / 2;
        wf.denom = m.rational ? m.rational->D : DPoly{1.0};
    }
    const double al = m.is_radial() ? m.l + 0.5 : m.A - m.B - 0.5;
    const double be = m.A + m.B - 0.5;
    using EF = ExceptionalFamily<double>;
    switch (m.family) {
        case Family::RadialOsc:
            wf.poly = detail::laguerre_unchecked(al, level);
            wf.label = "L^(" + detail::fmt(al) + ")_" + std::to_string(level);
            break;
        case Family::Scarf1:
            wf.poly = detail::jacobi_unchecked(al, be, level);
            wf.label = "P^(" + detail::fmt(al) + "," + detail::fmt(be) + ")_" + std::to_string(level);
            break;
        case Family::ExtRadialLinear:
            wf.poly = exceptional_polynomial(EF{ExceptionalKind::X1Laguerre, al, 0.0}, level);
            wf.label = "x1-laguerre(" + detail::fmt(al) + ") nu=" + std::to_string(level);
            break;
        case Family::ExtRadialQuad: {
            ExceptionalKind k = m.qcase == QuadCase::I    ? ExceptionalKind::L1
                                : m.qcase == QuadCase::II ? ExceptionalKind::L2
                                                          : ExceptionalKind::L3;
            if (k == ExceptionalKind::L3 && level == 0) {
                wf.poly = DPoly{1.0};
                wf.label = "1/phi";
            } else {
                int nu = k == ExceptionalKind::L3 ? level - 1 : level;
                wf.poly = exceptional_polynomial(EF{k, al, 0.0}, nu);
                wf.label = std::string(to_string(k)) + "(" + detail::fmt(al) + ") nu=" + std::to_string(nu);
            }
            break;
        }
        case Family::ExtScarfLinear:
            wf.poly = exceptional_polynomial(EF{ExceptionalKind::X1Jacobi, al, be}, level);
            wf.label = "x1-jacobi(" + detail::fmt(al) + "," + detail::fmt(be) + ") nu=" + std::to_string(level);
            break;
        case Family::ExtScarfQuad:
            if (m.qcase == QuadCase::I) {
                wf.poly = exceptional_polynomial(EF{ExceptionalKind::P1, al, be}, level);
                wf.label = "p1(" + detail::fmt(al) + "," + detail::fmt(be) + ") nu=" + std::to_string(level);
            } else if (m.qcase == QuadCase::II) {
                // parameters swapped and z -> -z
                wf.poly = exceptional_polynomial(EF{ExceptionalKind::P1, be, al}, level).reflect();
                wf.label = "p1(" + detail::fmt(be) + "," + detail::fmt(al) + ")(-z) nu=" + std::to_string(level);
            } else if (level == 0) {
                wf.poly = DPoly{1.0};
                wf.label = "1/phi";
            } else {
                wf.poly = exceptional_polynomial(EF{ExceptionalKind::P3, al, be}, level - 1);
                wf.label = "p3(" + detail::fmt(al) + "," + detail::fmt(be) + ") nu=" + std::to_string(level - 1);
            }
            break;
    }
    const double left = m.is_radial() ? 0.0 : -1.0;
    const double sign = detail::sign_right_of(wf.poly, left) * detail::sign_right_of(wf.denom, left);
    const double lns = detail::log_norm_sq(m, level);
    if (std::isnan(lns)) {
        wf.norm = 1.0;
        wf.norm = 1.0 / std::sqrt(normalization_integral(wf));
    } else {
        wf.norm = detail::half_exp(lns);
    }
    wf.norm *= sign;
    return wf;
}

/// The same wavefunction rescaled so that its quadrature norm is one.
inline WavefunctionSpec renormalized(WavefunctionSpec wf) {
    wf.norm /= std::sqrt(normalization_integral(wf));
    return wf;
}

/// Gegenbauer form of the B = 0 Scarf eigenfunctions, Nbar (cos x)^A C^(A)_nu(sin x).
inline WavefunctionSpec scarf_b0_eigenfunction(double A, int level) {
    if (level < 0) throw UsageError("level must be >= 0");
    if (!(A > 0)) throw ParameterError("the B = 0 Scarf form requires A > 0");
    WavefunctionSpec wf;
    wf.level = level;
    wf.domain = DomainKind::Interval;
    wf.energy = (A + level) * (A + level);
    wf.left_power = wf.right_power = A / 2;
    wf.poly = detail::gegenbauer_unchecked(A, level);
    wf.label = "C^(" + detail::fmt(A) + ")_" + std::to_string(level);
    const double n = level;
    wf.norm = detail::half_exp(log_gamma(A) + log_gamma(2 * A) + log_gamma(n + 1) + std::log(A + n) -
                               0.5 * std::log(std::numbers::pi) - log_gamma(A + 0.5) - log_gamma(2 * A + n));
    wf.norm *= detail::sign_right_of(wf.poly, -1.0);
    return wf;
}

/// epsilon_nu = E^(+)_nu - E, the start-model level measured from the factorization energy.
inline double susy_epsilon(const PotentialModel& m, int nu) {
    PotentialModel start = start_model(m);
    return analytic_spectrum(start, nu + 1).back() - factorization(m).E;
}

/// Sample points strictly inside the domain where the low levels are not negligible.
inline std::vector<double> interior_grid(const PotentialModel& m, int n, int top_level = 5) {
    std::vector<double> xs(n);
    if (m.is_radial()) {
        double e = analytic_spectrum(m, top_level + 1, EnergyOrigin::Bare).back();
        double xmax = 2 * std::sqrt((std::abs(e) + 15) / m.omega);
        for (int i = 0; i < n; ++i) xs[i] = xmax * (i + 1) / n;
    } else {
        for (int i = 0; i < n; ++i) xs[i] = -std::numbers::pi / 2 + std::numbers::pi * (i + 0.5) / n;
    }
    return xs;
}

/// Sup-norm distance between (1/sqrt(eps_nu)) A psi^(+)_nu and the extended eigenfunction it should produce,
/// after aligning the overall sign, on a 400-point interior grid.
inline double susy_map_check(const PotentialModel& m, int nu) {
    if (!m.is_extended()) throw UsageError("susy_map_check needs an extended model");
    if (nu < 0) throw UsageError("level must be >= 0");
    const PotentialModel start = start_model(m);
    const FactorizationData f = factorization(m);
    const SuperpotentialSpec w = superpotential(m);
    const WavefunctionSpec plus = eigenfunction(start, nu);
    const WavefunctionSpec minus = eigenfunction(m, f.susy_case == SusyCase::iii ? nu + 1 : nu);
    const double eps = susy_epsilon(m, nu);
    if (!(eps > 0)) throw NumericError("non-positive epsilon in the SUSY map");
    std::vector<double> mapped, direct;
    for (double x : interior_grid(m, 400)) {
        Jet<1> p = wavefunction_at(plus, Jet<1>::variable(x));
        mapped.push_back((p.coeff(1) + superpotential_at(w, x) * p.value()) / std::sqrt(eps));
        direct.push_back(eval_wavefunction(minus, x));
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < mapped.size(); ++i) dot += mapped[i] * direct[i];
    const double s = dot < 0 ? -1.0 : 1.0;
    double r = 0.0;
    for (std::size_t i = 0; i < mapped.size(); ++i) r = std::max(r, std::abs(s * mapped[i] - direct[i]));
    return r;
}

/// Interior sign changes of psi on an n-point grid.
inline int count_nodes(const WavefunctionSpec& wf, const std::vector<double>& xs) {
    int nodes = 0;
    double prev = 0.0;
    for (double x : xs) {
        double v = eval_wavefunction(wf, x);
        if (v == 0.0) continue;
        if (prev != 0.0 && (v > 0) != (prev > 0)) ++nodes;
        prev = v;
    }
    return nodes;
}

}  // namespace ratext
