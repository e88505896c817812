#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "io.hpp"
#include "potentials.hpp"
#include "spectral.hpp"
#include "susy.hpp"
#include "wavefunctions.hpp"
#include "xpoly.hpp"

namespace ratext::verify {

using io::CheckResult;
using io::Json;

inline constexpr double kResidualTol = 1e-10;
inline constexpr double kShapeInvarianceTol = 1e-10;
inline constexpr double kSusyMapTol = 1e-9;
inline constexpr double kLeakageTol = 1e-8;
inline constexpr double kIsospectralFactor = 10.0;  // multiple of the Richardson estimate
inline constexpr double kExtraLevelTol = 5e-3;
inline constexpr double kLimitRateTol = 0.2;
inline constexpr int kIsospectralGrid = 2000;
inline constexpr int kExtraLevelGrid = 4000;

/// Overrides the numeric tolerance of every inexact check when set.
struct Options {
    std::optional<double> tol;
};

/// One representative of every extended family/case/branch combination.
inline std::vector<ModelSpec> default_models() {
    return {
        {Family::ExtRadialLinear, 1, 1, 0, 0, std::nullopt, Branch::Lower},
        {Family::ExtRadialLinear, 1, 1, 0, 0, std::nullopt, Branch::Upper},
        {Family::ExtRadialQuad, 1, 1, 0, 0, QuadCase::I, std::nullopt},
        {Family::ExtRadialQuad, 1, 1, 0, 0, QuadCase::II, std::nullopt},
        {Family::ExtRadialQuad, 1, 1, 0, 0, QuadCase::III, std::nullopt},
        {Family::ExtScarfLinear, 0, 0, 3, 1, std::nullopt, Branch::Upper},
        {Family::ExtScarfLinear, 0, 0, 3, 1, std::nullopt, Branch::Lower},
        {Family::ExtScarfQuad, 0, 0, 4, 1.4, QuadCase::I, std::nullopt},
        {Family::ExtScarfQuad, 0, 0, 4, 1.4, QuadCase::II, std::nullopt},
        {Family::ExtScarfQuad, 0, 0, 4, 1.4, QuadCase::III, std::nullopt},
    };
}

namespace detail {

inline double tol_or(const Options& o, double d) { return o.tol.value_or(d); }

inline CheckResult below(std::string check, Json params, double value, double tol) {
    return {std::move(check), std::move(params), value, tol, std::isfinite(value) && value < tol};
}

inline CheckResult exact(std::string check, Json params, int mismatches) {
    return {std::move(check), std::move(params), static_cast<double>(mismatches), 0.0, mismatches == 0};
}

inline Json poly_params(const ExceptionalFamily<Rational>& f) {
    Json p{{"family", std::string(to_string(f.kind))}, {"alpha", to_string(f.alpha)}};
    if (!f.is_laguerre_type()) p["beta"] = to_string(f.beta);
    return p;
}

/// max over z in {-1, -3/4, ..., 1} of |p(z)|
inline double sup_on_grid(const RPoly& p) {
    double e = 0.0;
    for (int j = -4; j <= 4; ++j) e = std::max(e, std::abs(to_double(p(Rational(j, 4)))));
    return e;
}

/// Worst deviation from 1 of the decade-to-decade error ratio exponent, eps = 10^-2 .. 10^-6.
inline double first_order_deviation(const std::function<RPoly(const Rational&)>& error_at) {
    std::vector<double> errs;
    for (long d = 100; d <= 1000000; d *= 10) errs.push_back(sup_on_grid(error_at(Rational(1, d))));
    double worst = 0.0;
    for (std::size_t i = 1; i < errs.size(); ++i)
        worst = std::max(worst, std::abs(std::log10(errs[i - 1] / errs[i]) - 1.0));
    return worst;
}

}  // namespace detail

/// Generating-operator definition against the published classical expansion, exact, nu <= 15.
inline std::vector<CheckResult> polynomials(const Options& = {}) {
    using K = ExceptionalKind;
    std::vector<CheckResult> out;
    std::vector<ExceptionalFamily<Rational>> fams;
    for (const Rational& a : {Rational(1, 2), Rational(3, 2), Rational(7, 3), Rational(13, 4)})
        for (K k : {K::X1Laguerre, K::L1, K::L2, K::L3}) fams.push_back({k, a, Rational(0)});
    for (auto [a, b] : {std::pair{Rational(1, 2), Rational(5, 2)}, std::pair{Rational(-1, 3), Rational(2)},
                        std::pair{Rational(3), Rational(7, 4)}})
        fams.push_back({K::X1Jacobi, a, b});
    for (const auto& f : fams) {
        int bad_expansion = 0, bad_degree = 0;
        for (int nu = 0; nu <= 15; ++nu) {
            RPoly p = exceptional_polynomial(f, nu);
            if (p != expand(expansion_coefficients(f, nu), f.classical())) ++bad_expansion;
            if (p.degree() != nu + f.offset()) ++bad_degree;
        }
        out.push_back(detail::exact("definition-vs-expansion", detail::poly_params(f), bad_expansion));
        out.push_back(detail::exact("degree", detail::poly_params(f), bad_degree));
    }
    return out;
}

/// Schrodinger residual of the analytic eigenfunctions, levels 0..5.
inline std::vector<CheckResult> residuals(const Options& o = {}) {
    std::vector<CheckResult> out;
    for (const auto& s : default_models()) {
        PotentialModel m = make_model(s);
        double worst = 0.0;
        for (int nu = 0; nu <= 5; ++nu) worst = std::max(worst, schrodinger_residual(m, eigenfunction(m, nu)));
        out.push_back(detail::below("schrodinger-residual", io::model_json(m), worst,
                                    detail::tol_or(o, kResidualTol)));
    }
    return out;
}

/// FD spectra of case ii extended models against their start models, four levels.
/// Only start models with regular endpoints are compared (see fd_regular_endpoints).
inline std::vector<CheckResult> isospectrality(const Options& o = {}) {
    std::vector<CheckResult> out;
    const int n = kIsospectralGrid, k = 4;
    for (const auto& s : default_models()) {
        PotentialModel m = make_model(s);
        if (factorization(m).susy_case != SusyCase::ii) continue;
        PotentialModel start = start_model(m);
        if (!fd_regular_endpoints(start)) continue;
        auto ext = fd_eigensolve(m, default_grid(m, n, k), k);
        auto ref = fd_eigensolve(start, default_grid(m, n, k), k);
        auto e1 = fd_error_estimate(m, n, k), e2 = fd_error_estimate(start, n, k);
        double worst = 0.0, tol = 0.0;
        for (int j = 0; j < k; ++j) {
            double bound = o.tol ? *o.tol : kIsospectralFactor * (e1[j] + e2[j]);
            double d = std::abs(ext.eigenvalues[j] - ref.eigenvalues[j]);
            // report the level with the smallest margin
            if (j == 0 || d / bound > worst / tol) worst = d, tol = bound;
        }
        out.push_back(detail::below("isospectrality", io::model_json(m), worst, tol));
    }
    return out;
}

/// Case iii: exactly one FD level below the start-model tower, at the factorization energy.
inline std::vector<CheckResult> extra_level(const Options& o = {}) {
    std::vector<CheckResult> out;
    for (const ModelSpec& s : {ModelSpec{Family::ExtRadialQuad, 1, 5, 0, 0, QuadCase::III},
                               ModelSpec{Family::ExtScarfQuad, 0, 0, 4, 0.3, QuadCase::III}}) {
        PotentialModel m = make_model(s);
        double e0 = analytic_spectrum(start_model(m), 1).front();
        auto rep = fd_eigensolve(m, default_grid(m, kExtraLevelGrid, 4), 4);
        int below = 0;
        for (double e : rep.eigenvalues) below += e < e0 - 1e-2;
        out.push_back(detail::exact("extra-level-count", io::model_json(m), std::abs(below - 1)));
        double expect = m.is_radial() ? m.omega * (m.l - 3.5) : (m.A - 2) * (m.A - 2);
        out.push_back(detail::below("extra-level-energy", io::model_json(m), std::abs(rep.eigenvalues[0] - expect),
                                    detail::tol_or(o, kExtraLevelTol)));
    }
    return out;
}

/// Gram matrices of levels 0..5 of the case ii extended models.
inline std::vector<CheckResult> orthogonality(const Options& o = {}) {
    std::vector<CheckResult> out;
    for (const auto& s : default_models()) {
        PotentialModel m = make_model(s);
        if (factorization(m).susy_case != SusyCase::ii) continue;
        Eigen::MatrixXd g = orthogonality_matrix(m, 5);
        double dev = (g - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff();
        out.push_back(detail::below("gram-identity", io::model_json(m), dev, detail::tol_or(o, kLeakageTol)));
    }
    return out;
}

inline std::vector<CheckResult> shape_invariance(const Options& o = {}) {
    std::vector<CheckResult> out;
    for (const auto& s : default_models()) {
        PotentialModel m = make_model(s);
        if (!shape_invariance_eligible(m)) continue;
        auto rep = shape_invariance_report(m);
        Json p = io::model_json(m);
        p["delta"] = io::json_real(rep.delta);
        out.push_back(detail::below("shape-invariance", p, rep.residual, detail::tol_or(o, kShapeInvarianceTol)));
    }
    return out;
}

/// (1/sqrt(eps)) A psi^(+) against the extended eigenfunctions, levels 0..3.
inline std::vector<CheckResult> intertwining(const Options& o = {}) {
    std::vector<CheckResult> out;
    for (const auto& s : default_models()) {
        PotentialModel m = make_model(s);
        double worst = 0.0;
        for (int nu = 0; nu <= 3; ++nu) worst = std::max(worst, susy_map_check(m, nu));
        out.push_back(detail::below("susy-map", io::model_json(m), worst, detail::tol_or(o, kSusyMapTol)));
    }
    return out;
}

/// Symbolic limits against the Gegenbauer and (1-z)^2 forms, and first-order convergence in eps.
inline std::vector<CheckResult> limits(const Options& o = {}) {
    using K = ExceptionalKind;
    std::vector<CheckResult> out;
    for (const Rational& a : {Rational(1, 2), Rational(3, 2), Rational(7, 3)}) {
        int bad = 0;
        for (int nu = 0; nu <= 8; ++nu) {
            Rational coef = (a + nu + 1) * pochhammer(a, nu) / pochhammer(2 * a + 1, nu);
            auto C = classical_polynomial(ClassicalFamily<Rational>::gegenbauer(a + Rational(1, 2)), nu);
            if (limit_beta_to_alpha(nu, a) != C * coef) ++bad;
        }
        out.push_back(detail::exact("beta-to-alpha-symbolic", Json{{"alpha", to_string(a)}}, bad));
        int nu = 3;
        RPoly lim = limit_beta_to_alpha(nu, a);
        double dev = detail::first_order_deviation([&](const Rational& eps) {
            return exceptional_polynomial(ExceptionalFamily<Rational>{K::X1Jacobi, a, a + eps}, nu) * eps - lim;
        });
        out.push_back(detail::below("beta-to-alpha-rate", Json{{"alpha", to_string(a)}, {"nu", nu}}, dev,
                                    detail::tol_or(o, kLimitRateTol)));
    }
    for (const Rational& b : {Rational(1, 2), Rational(2), Rational(5, 2)}) {
        int bad = 0;
        for (int nu = 1; nu <= 8; ++nu) {
            RPoly lim = limit_alpha_to_zero(nu, b);
            RPoly w{Rational(1), Rational(-1)};
            RPoly expect =
                w * w * classical_polynomial(ClassicalFamily<Rational>::jacobi(Rational(2), b), nu - 1) *
                (-(b + nu + 1) / Rational(4 * nu));
            if (lim != expect || lim != exceptional_polynomial(ExceptionalFamily<Rational>{K::X1Jacobi, 0, b}, nu))
                ++bad;
        }
        out.push_back(detail::exact("alpha-to-zero-symbolic", Json{{"beta", to_string(b)}}, bad));
        int nu = 2;
        RPoly lim = limit_alpha_to_zero(nu, b);
        double dev = detail::first_order_deviation([&](const Rational& eps) {
            return exceptional_polynomial(ExceptionalFamily<Rational>{K::X1Jacobi, eps, b}, nu) - lim;
        });
        out.push_back(detail::below("alpha-to-zero-rate", Json{{"beta", to_string(b)}, {"nu", nu}}, dev,
                                    detail::tol_or(o, kLimitRateTol)));
    }
    return out;
}

/// One designed parameter point of the gate test set.
struct GatePoint {
    ModelSpec spec;
    bool accept;
    std::string note;
};

/**
 * Boundary test set for the model constructors: the radial root conditions for the linear and quadratic
 * extensions, and one interior point of every quadratic Scarf region row plus points on and just past the
 * edges of the constructible rows.
 */
inline std::vector<GatePoint> gate_points() {
    using F = Family;
    using Q = QuadCase;
    auto rad = [](F f, double l, std::optional<Q> c, std::optional<Branch> b) {
        return ModelSpec{f, 1.0, l, 0, 0, c, b};
    };
    auto sq = [](double A, double B, Q c) { return ModelSpec{F::ExtScarfQuad, 0, 0, A, B, c}; };
    std::vector<GatePoint> pts{
        {rad(F::ExtRadialLinear, 0, std::nullopt, Branch::Upper), true, "l = 0 upper"},
        {rad(F::ExtRadialLinear, 0, std::nullopt, Branch::Lower), false, "l = 0 lower"},
        {rad(F::ExtRadialLinear, 0.05, std::nullopt, Branch::Lower), true, "l > 0 lower"},
        {rad(F::ExtRadialQuad, 0, Q::I, std::nullopt), false, "case I at l = 0"},
        {rad(F::ExtRadialQuad, 0.01, Q::I, std::nullopt), true, "case I two negative roots"},
        {rad(F::ExtRadialQuad, 0.5, Q::II, std::nullopt), false, "case II at l = 1/2"},
        {rad(F::ExtRadialQuad, 0.51, Q::II, std::nullopt), true, "case II complex roots"},
        {rad(F::ExtRadialQuad, 0.3, Q::II, std::nullopt), false, "case II real roots"},
        {rad(F::ExtRadialQuad, 0.5, Q::III, std::nullopt), false, "case III at l = 1/2"},
        {rad(F::ExtRadialQuad, 0.51, Q::III, std::nullopt), true, "case III complex roots"},
        // row interiors
        {sq(4, 2, Q::I), true, "row 1"},
        {sq(1.8, 0.7, Q::I), false, "row 2"},
        {sq(3, 0.75, Q::I), false, "row 3"},
        {sq(1.4, 0.25, Q::I), false, "row 4"},
        {sq(3, 0.25, Q::I), false, "row 5"},
        {sq(3, 1, Q::II), true, "row 6"},
        {sq(1.2, 0.1, Q::III), false, "row 7"},
        {sq(1.4, 0.05, Q::III), false, "row 8"},
        {sq(3, 1, Q::III), true, "row 9"},
        // edges of the constructible rows
        {sq(4, 1, Q::I), false, "row 1, B = 1"},
        {sq(4, 3, Q::I), false, "row 1, B = A-1"},
        {sq(4, 1.01, Q::I), true, "row 1, just inside B = 1"},
        {sq(4, 2.99, Q::I), true, "row 1, just inside B = A-1"},
        {sq(3, 1.5, Q::II), false, "row 6, B = A-3/2"},
        {sq(3, 1.49, Q::II), true, "row 6, just inside B = A-3/2"},
        {sq(3, 0, Q::II), false, "row 6, B = 0"},
        {sq(3, 1.5, Q::III), false, "row 9, B = A-3/2"},
        {sq(3, 0.01, Q::III), true, "row 9, just inside B = 0"},
    };
    return pts;
}

inline std::vector<CheckResult> gates(const Options& = {}) {
    std::vector<CheckResult> out;
    for (const auto& g : gate_points()) {
        bool accepted = true;
        try {
            (void)make_model(g.spec);
        } catch (const ParameterError&) {
            accepted = false;
        }
        Json p = io::spec_json(g.spec);
        p["point"] = g.note;
        p["expect"] = g.accept ? "accept" : "reject";
        out.push_back(detail::exact("parameter-gate", p, accepted != g.accept));
    }
    // row membership must reproduce the stated root condition at each row interior
    const auto& rows = scarf_quad_regions();
    const std::vector<std::pair<double, double>> interior{{4, 2},    {1.8, 0.7}, {3, 0.75}, {1.4, 0.25}, {3, 0.25},
                                                          {3, 1},    {1.2, 0.1}, {1.4, 0.05}, {3, 1}};
    for (std::size_t k = 0; k < rows.size(); ++k) {
        auto [A, B] = interior[k];
        auto [a, b] = scarf_link_ab(rows[k].link, A, B);
        auto [c, d] = scarf_quad_cd(a, b);
        bool ok = rows[k].contains(A, B) && scarf_root_condition(c, d) == rows[k].condition;
        out.push_back(detail::exact("region-root-condition",
                                    Json{{"row", rows[k].row}, {"A", A}, {"B", B}, {"region", rows[k].region}},
                                    ok ? 0 : 1));
    }
    return out;
}

using Suite = std::function<std::vector<CheckResult>(const Options&)>;

/// Suites in the order `all` runs them.
inline const std::vector<std::pair<std::string, Suite>>& suites() {
    static const std::vector<std::pair<std::string, Suite>> s{
        {"polynomials", polynomials},   {"residuals", residuals},
        {"isospectrality", isospectrality}, {"extra-level", extra_level},
        {"orthogonality", orthogonality}, {"shape-invariance", shape_invariance},
        {"intertwining", intertwining}, {"limits", limits},
        {"gates", gates},
    };
    return s;
}

inline std::vector<CheckResult> run(const std::string& name, const Options& o = {}) {
    std::vector<CheckResult> out;
    for (const auto& [n, f] : suites())
        if (name == "all" || name == n) {
            auto r = f(o);
            out.insert(out.end(), r.begin(), r.end());
            if (name != "all") return out;
        }
    if (name != "all") throw UsageError("unknown suite '" + name + "'");
    return out;
}

}  // namespace ratext::verify
