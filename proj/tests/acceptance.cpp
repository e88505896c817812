// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ratext/spectral.hpp"
#include "ratext/susy.hpp"
#include "ratext/verify.hpp"
#include "sampling.hpp"

using namespace ratext;
using K = ExceptionalKind;

namespace {

// Pinned tolerances.
constexpr double kResidualTol = 1e-10;
constexpr int kResidualPoints = 100;
constexpr int kIsoGrid = 4000;
constexpr int kIsoDraws = 20;
constexpr double kIsoFactor = 10.0;
constexpr double kIsoExampleTol = 2e-3;
constexpr double kExtraTol = 5e-3;
constexpr double kGramTol = 1e-8;
constexpr double kShapeTol = 1e-10;
constexpr double kRateTol = 0.2;
constexpr double kMapTol = 1e-9;
constexpr double kBranchTol = 1e-12;

/// Accumulates mismatches and keeps the first few descriptions.
struct Tally {
    long checks = 0;
    long failures = 0;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        ++failures;
        if (notes.size() < 5) notes.push_back(what);
    }
    void below(double v, double tol, const std::string& what) {
        expect(std::isfinite(v) && v < tol, what + " value " + io::format_real(v) + " tol " + io::format_real(tol));
    }
};

bool singular_for(K k, const Rational& a, const Rational& b, int nu) {
    Rational d = b - a, s = a + b;
    switch (k) {
        case K::X1Jacobi: return d == 0 || b + nu == 0;
        case K::P1: return d == 1 || d == 2 || b + nu - 1 == 0;
        case K::P3: return s == 1 || s == 2 || s + nu == 0;
        default: return false;
    }
}

/// Default variants followed by `draws` random valid parameter points of each.
std::vector<ModelSpec> with_draws(int draws, std::uint64_t seed, const std::function<bool(const ModelSpec&)>& keep) {
    std::mt19937_64 rng(seed);
    std::vector<ModelSpec> out;
    for (const auto& v : sampling::extended_variants()) {
        if (!keep(v)) continue;
        out.push_back(v);
        for (int i = 0; i < draws; ++i) out.push_back(sampling::draw(v, rng));
    }
    return out;
}

bool all_specs(const ModelSpec&) { return true; }

bool case_ii(const ModelSpec& s) { return !(s.qcase && *s.qcase == QuadCase::III); }

// ---------------------------------------------------------------------------------------------

Tally fixtures_exact() {
    Tally t;
    for (const auto& f : fixtures::laguerre_fixtures())
        for (const auto& a : fixtures::laguerre_alphas())
            t.expect(exceptional_polynomial(ExceptionalFamily<Rational>{f.kind, a, 0}, f.nu) == f.expected(a),
                     f.name + " alpha=" + to_string(a));
    for (const auto& [n, expected] : fixtures::classical_laguerre_fixtures())
        for (const auto& a : fixtures::laguerre_alphas())
            t.expect(classical_polynomial(ClassicalFamily<Rational>::laguerre(a), n) == expected(a),
                     "L_" + std::to_string(n));
    for (const auto& f : fixtures::jacobi_fixtures())
        for (const auto& a : fixtures::jacobi_alphas())
            for (const auto& b : fixtures::jacobi_betas()) {
                if (singular_for(f.kind, a, b, f.nu)) continue;
                t.expect(exceptional_polynomial(ExceptionalFamily<Rational>{f.kind, a, b}, f.nu) == f.expected(a, b),
                         f.name + " alpha=" + to_string(a) + " beta=" + to_string(b));
            }
    for (const auto& [n, expected] : fixtures::classical_jacobi_fixtures())
        for (const auto& a : fixtures::jacobi_alphas())
            for (const auto& b : fixtures::jacobi_betas())
                t.expect(classical_polynomial(ClassicalFamily<Rational>::jacobi(a, b), n) == expected(a, b),
                         "P_" + std::to_string(n));
    return t;
}

Tally definition_expansion() {
    Tally t;
    auto check = [&](const ExceptionalFamily<Rational>& f) {
        for (int nu = 0; nu <= 15; ++nu) {
            RPoly p = exceptional_polynomial(f, nu);
            auto c = expansion_coefficients(f, nu);
            std::string tag = std::string(to_string(f.kind)) + " alpha=" + to_string(f.alpha) +
                              (f.is_laguerre_type() ? "" : " beta=" + to_string(f.beta)) + " nu=" + std::to_string(nu);
            t.expect(p == expand(c, f.classical()), tag);
            if (f.kind == K::L3 && nu >= 3) {
                // the two lowest published terms are identically zero; confirm with an independent decomposition
                auto d = classical_decomposition(p, f.classical());
                t.expect(c.at(nu - 2) == 0 && c.at(nu - 3) == 0 && d.at(nu - 2) == 0 && d.at(nu - 3) == 0,
                         tag + " vanishing low terms");
            }
        }
    };
    for (K k : {K::X1Laguerre, K::L1, K::L2, K::L3})
        for (const auto& a : fixtures::laguerre_alphas()) check({k, a, 0});
    for (const auto& a : fixtures::jacobi_alphas())
        for (const auto& b : fixtures::jacobi_betas()) check({K::X1Jacobi, a, b});
    return t;
}

Tally schrodinger_residuals() {
    Tally t;
    for (const auto& s : with_draws(3, 101, all_specs)) {
        PotentialModel m = make_model(s);
        const auto xs = residual_points(m, kResidualPoints);
        for (int nu = 0; nu <= 5; ++nu) {
            WavefunctionSpec wf = eigenfunction(m, nu);
            double worst = 0.0, scale = 0.0;
            for (double x : xs) {
                Jet4 p = wavefunction_at(wf, Jet4::variable(x));
                double v = evaluate(m, x) + m.additive_constant;
                worst = std::max(worst, std::abs(-p.derivative(2) + (v - wf.energy) * p.value()));
                scale = std::max(scale, std::abs(p.value()));
            }
            t.below(worst / scale, kResidualTol, m.describe() + " nu=" + std::to_string(nu));
        }
    }
    return t;
}

Tally isospectrality(long& skipped) {
    Tally t;
    {
        PotentialModel m = make_model({Family::ExtRadialLinear, 1, 1});
        auto rep = fd_eigensolve(m, default_grid(m, kIsoGrid), 3, EnergyOrigin::Bare);
        for (int k = 0; k < 3; ++k)
            t.below(std::abs(rep.eigenvalues[k] - (2.5 + 2 * k)), kIsoExampleTol, "radial linear example");
    }
    std::mt19937_64 rng(202);
    skipped = 0;
    for (const auto& v : sampling::extended_variants()) {
        if (!case_ii(v)) continue;
        int accepted = 0;
        while (accepted < kIsoDraws) {
            PotentialModel m = make_model(sampling::draw(v, rng));
            PotentialModel start = start_model(m);
            if (!fd_regular_endpoints(start)) {
                ++skipped;
                continue;
            }
            ++accepted;
            const int k = 4;
            auto ext = fd_eigensolve(m, default_grid(m, kIsoGrid, k), k, EnergyOrigin::Partner);
            auto ref = fd_eigensolve(start, default_grid(m, kIsoGrid, k), k);
            auto e1 = fd_error_estimate(m, kIsoGrid, k), e2 = fd_error_estimate(start, kIsoGrid, k);
            for (int j = 0; j < k; ++j)
                t.below(std::abs(ext.eigenvalues[j] - ref.eigenvalues[j]), kIsoFactor * (e1[j] + e2[j]),
                        m.describe() + " level " + std::to_string(j));
        }
    }
    return t;
}

Tally extra_level() {
    Tally t;
    std::mt19937_64 rng(303);
    std::vector<ModelSpec> specs{{Family::ExtRadialQuad, 1, 5, 0, 0, QuadCase::III},
                                 {Family::ExtScarfQuad, 0, 0, 4, 0.3, QuadCase::III}};
    for (int i = 0; i < 4; ++i) {
        specs.push_back(sampling::draw(specs[0], rng));
        specs.push_back(sampling::draw(specs[1], rng));
    }
    for (const auto& s : specs) {
        PotentialModel m = make_model(s);
        double tower = analytic_spectrum(start_model(m), 1).front();
        auto rep = fd_eigensolve(m, default_grid(m, kIsoGrid, 4), 4);
        int below = 0;
        for (double e : rep.eigenvalues) below += e < tower - 10 * kExtraTol;
        t.expect(below == 1, m.describe() + " levels below the tower: " + std::to_string(below));
        double expect = m.is_radial() ? m.omega * (m.l - 3.5) : (m.A - 2) * (m.A - 2);
        t.below(std::abs(rep.eigenvalues[0] - expect), kExtraTol, m.describe() + " extra level");
    }
    return t;
}

Tally orthonormality() {
    Tally t;
    for (const auto& s : with_draws(3, 404, case_ii)) {
        PotentialModel m = make_model(s);
        Eigen::MatrixXd g = orthogonality_matrix(m, 5);
        t.below((g - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(), kGramTol, m.describe());
    }
    using EF = ExceptionalFamily<double>;
    for (const auto& f : {EF{K::X1Laguerre, 1.5, 0}, EF{K::L1, 0.8, 0}, EF{K::L2, 2.3, 0}, EF{K::X1Jacobi, 1.2, 3.1},
                          EF{K::P1, 1.3, 4.9}})
        t.below(relative_leakage(polynomial_gram(f, 6)), kGramTol, std::string(to_string(f.kind)) + " gram");
    return t;
}

Tally shape_invariance() {
    Tally t;
    for (const auto& s : with_draws(5, 505, case_ii)) {
        PotentialModel m = make_model(s);
        t.below(shape_invariance_report(m).residual, kShapeTol, m.describe());
    }
    return t;
}

Tally limits() {
    Tally t;
    for (const auto& a : fixtures::laguerre_alphas())
        for (int nu = 0; nu <= 8; ++nu) {
            Rational coef = (a + nu + 1) * pochhammer(a, nu) / pochhammer(2 * a + 1, nu);
            auto C = classical_polynomial(ClassicalFamily<Rational>::gegenbauer(a + Rational(1, 2)), nu);
            t.expect(limit_beta_to_alpha(nu, a) == C * coef, "beta->alpha alpha=" + to_string(a));
        }
    const RPoly w{Rational(1), Rational(-1)};
    for (const auto& b : fixtures::jacobi_betas())
        for (int nu = 1; nu <= 8; ++nu) {
            RPoly expect = w * w * classical_polynomial(ClassicalFamily<Rational>::jacobi(Rational(2), b), nu - 1) *
                           (-(b + nu + 1) / Rational(4 * nu));
            t.expect(limit_alpha_to_zero(nu, b) == expect, "alpha->0 beta=" + to_string(b));
        }
    for (const auto& a : {Rational(1, 2), Rational(3, 2), Rational(7, 3)})
        for (int nu : {1, 3, 5}) {
            RPoly lim = limit_beta_to_alpha(nu, a);
            double dev = verify::detail::first_order_deviation([&](const Rational& eps) {
                return exceptional_polynomial(ExceptionalFamily<Rational>{K::X1Jacobi, a, a + eps}, nu) * eps - lim;
            });
            t.expect(dev <= kRateTol, "beta->alpha rate alpha=" + to_string(a) + " deviation " + io::format_real(dev));
        }
    for (const auto& b : {Rational(1, 2), Rational(5, 2), Rational(17, 4)})
        for (int nu : {1, 2, 4}) {
            RPoly lim = limit_alpha_to_zero(nu, b);
            double dev = verify::detail::first_order_deviation([&](const Rational& eps) {
                return exceptional_polynomial(ExceptionalFamily<Rational>{K::X1Jacobi, eps, b}, nu) - lim;
            });
            t.expect(dev <= kRateTol, "alpha->0 rate beta=" + to_string(b) + " deviation " + io::format_real(dev));
        }
    return t;
}

Tally intertwining() {
    Tally t;
    for (const auto& s : with_draws(3, 606, all_specs)) {
        PotentialModel m = make_model(s);
        for (int nu = 0; nu <= 3; ++nu)
            t.below(susy_map_check(m, nu), kMapTol, m.describe() + " nu=" + std::to_string(nu));
    }
    std::mt19937_64 rng(607);
    ModelSpec lower{Family::ExtRadialLinear, 1, 1, 0, 0, std::nullopt, Branch::Lower};
    for (int i = 0; i < 5; ++i) {
        PotentialModel lo = make_model(i == 0 ? lower : sampling::draw(lower, rng));
        PotentialModel up = with_branch(lo, Branch::Upper);
        for (int nu = 0; nu <= 3; ++nu) {
            auto a = eigenfunction(lo, nu), b = eigenfunction(up, nu);
            double worst = 0.0, scale = 0.0;
            for (double x : interior_grid(lo, 200)) {
                double pa = eval_wavefunction(a, x), pb = eval_wavefunction(b, x);
                worst = std::max(worst, std::abs(std::abs(pa) - std::abs(pb)));
                scale = std::max(scale, std::abs(pa));
            }
            t.below(worst / scale, kBranchTol, lo.describe() + " branches nu=" + std::to_string(nu));
        }
    }
    return t;
}

Tally gates() {
    Tally t;
    for (const auto& r : verify::gates()) t.expect(r.pass, r.check + " " + r.params.dump());
    // random sweep: acceptance by the constructor must coincide with membership of the constructible row
    std::mt19937_64 rng(708);
    std::uniform_real_distribution<double> UA(1.0, 7.0), UB(0.0, 6.0), UL(0.0, 3.0);
    const auto& rows = scarf_quad_regions();
    for (int i = 0; i < 20000; ++i) {
        double A = UA(rng), B = UB(rng);
        for (QuadCase c : {QuadCase::I, QuadCase::II, QuadCase::III}) {
            bool in_row = false;
            for (const auto& r : rows) in_row |= r.constructible == c && r.contains(A, B);
            bool built = true;
            try {
                (void)make_model({Family::ExtScarfQuad, 0, 0, A, B, c});
            } catch (const ParameterError&) {
                built = false;
            }
            t.expect(built == in_row, "scarf-ext-quad " + std::string(to_string(c)) + " A=" + io::format_real(A) +
                                          " B=" + io::format_real(B));
        }
        for (const auto& r : rows) {
            if (!r.contains(A, B)) continue;
            auto [a, b] = scarf_link_ab(r.link, A, B);
            auto [cc, d] = scarf_quad_cd(a, b);
            t.expect(scarf_root_condition(cc, d) == r.condition, "row " + std::to_string(r.row));
        }
        // radial: two negative roots for every l > 0 in case I, complex roots exactly when l > 1/2 otherwise
        double l = UL(rng);
        for (QuadCase c : {QuadCase::I, QuadCase::II, QuadCase::III}) {
            bool expect = c == QuadCase::I ? l > 0 : l > 0.5;
            bool built = true;
            try {
                (void)make_model({Family::ExtRadialQuad, 1, l, 0, 0, c});
            } catch (const ParameterError&) {
                built = false;
            }
            t.expect(built == expect, "radial-ext-quad l=" + io::format_real(l));
        }
    }
    return t;
}

int report(int id, const std::string& title, const std::function<Tally()>& body, const std::string& extra = {}) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    std::string error;
    try {
        t = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = error.empty() && t.failures == 0 && t.checks > 0;
    std::printf("CRITERION %2d: %s  %s (%ld checks, %ld failed%s, %.1f s)\n", id, pass ? "PASS" : "FAIL",
                title.c_str(), t.checks, t.failures, extra.c_str(), secs);
    if (!error.empty()) std::printf("    exception: %s\n", error.c_str());
    for (const auto& n : t.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    return pass ? 0 : 1;
}

}  // namespace

int main() {
    int failed = 0;
    long skipped = 0;
    failed += report(1, "published low-degree polynomials reproduced exactly", fixtures_exact);
    failed += report(2, "generating definitions equal classical expansions, nu <= 15", definition_expansion);
    failed += report(3, "Schrodinger residuals of extended eigenfunctions below 1e-10", schrodinger_residuals);
    failed += report(4, "isospectrality of extended and start models (finite differences)",
                     [&] { return isospectrality(skipped); });
    std::printf("    draws with an irregular start model set aside: %ld\n", skipped);
    failed += report(5, "case iii adds exactly one level below the tower", extra_level);
    failed += report(6, "Gram matrices of levels 0..5 equal the identity", orthonormality);
    failed += report(7, "shape-invariance residuals below 1e-10", shape_invariance);
    failed += report(8, "parameter limits: exact forms and first-order convergence", limits);
    failed += report(9, "intertwining map reproduces extended eigenfunctions", intertwining);
    failed += report(10, "parameter gates accept and reject the designed set", gates);
    std::printf("%s: %d of 10 criteria failed\n", failed ? "FAIL" : "PASS", failed);
    return failed ? 1 : 0;
}
