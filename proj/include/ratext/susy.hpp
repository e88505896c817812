#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "jet.hpp"
#include "potentials.hpp"

namespace ratext {

/// Smooth function given by its Taylor jet at each point.
using SmoothFn = std::function<Jet4(double)>;

/// Jet from plain samples: derivatives 0..3 by central differences of step h (order h^2). Order 4 is left zero.
inline SmoothFn finite_difference_fn(std::function<double(double)> f, double h) {
    return [f = std::move(f), h](double x) {
        const double fm2 = f(x - 2 * h), fm = f(x - h), f0 = f(x), fp = f(x + h), fp2 = f(x + 2 * h);
        Jet4 j(f0);
        j.coeff(1) = (fp - fm) / (2 * h);
        j.coeff(2) = (fp - 2 * f0 + fm) / (h * h) / 2;
        j.coeff(3) = (fp2 - 2 * fp + 2 * fm - fm2) / (2 * h * h * h) / 6;
        return j;
    };
}

/// Default differencing step for callables without closed-form derivatives.
inline double default_fd_step(double scale) { return 1e-6 * scale; }

struct SusyPair {
    SmoothFn W;
    double E = 0.0;
    std::optional<PhiDescriptor> phi;
    std::optional<SusyCase> susy_case;
    std::optional<PotentialModel> v_plus_model;
    std::optional<PotentialModel> v_minus_model;

    /// V(+-) = W^2 -+ W' + E
    double v_plus(double x) const {
        Jet4 w = W(x);
        return w.value() * w.value() - w.coeff(1) + E;
    }
    double v_minus(double x) const {
        Jet4 w = W(x);
        return w.value() * w.value() + w.coeff(1) + E;
    }

    /// E^(+)_nu - E for the start model, when known.
    double epsilon(int nu) const {
        if (!v_plus_model) throw UnsupportedError("epsilon needs a pair built from a model");
        return analytic_spectrum(*v_plus_model, nu + 1).back() - E;
    }
    /// Level of V(-) reached by A psi(+)_nu: shifted by one in case iii.
    int mapped_level(int nu) const { return susy_case == SusyCase::iii ? nu + 1 : nu; }
};

inline SusyPair make_pair(SmoothFn W, double E) {
    SusyPair p;
    p.W = std::move(W);
    p.E = E;
    return p;
}

/// Pair of an extended model: W and E from the ansatz, V(+) the start model, V(-) the model plus its constant.
/// Conventional models give the shape-invariance pair with V(-) the next member of the family.
inline SusyPair make_pair(const PotentialModel& m) {
    SuperpotentialSpec w = superpotential(m);
    FactorizationData f = factorization(m);
    SusyPair p = make_pair([w](double x) { return superpotential_at(w, Jet4::variable(x)); }, f.E);
    p.phi = f.phi;
    p.susy_case = f.susy_case;
    p.v_plus_model = start_model(m);
    if (m.is_extended()) {
        p.v_minus_model = m;
    } else {
        ModelSpec s = m.spec();
        if (m.is_radial())
            s.l += 1;
        else
            s.A += 1;
        p.v_minus_model = detail::build_unchecked(s);
    }
    return p;
}

inline double apply_A(const SusyPair& p, const SmoothFn& f, double x) {
    Jet4 v = f(x);
    return v.coeff(1) + p.W(x).value() * v.value();
}

inline double apply_A_dagger(const SusyPair& p, const SmoothFn& f, double x) {
    Jet4 v = f(x);
    return -v.coeff(1) + p.W(x).value() * v.value();
}

/// A applied to f, as a smooth function (one order of the jet is consumed).
inline SmoothFn apply_A_fn(const SusyPair& p, SmoothFn f) {
    return [W = p.W, f = std::move(f)](double x) {
        Jet4 v = f(x);
        return d(v) + W(x) * v;
    };
}

/// sup over xs of |A H(+) f - H(-) A f|, H(+-) = -d^2 + W^2 -+ W' (the constant E cancels).
inline double intertwining_residual(const SusyPair& p, const SmoothFn& f, const std::vector<double>& xs) {
    double r = 0.0;
    for (double x : xs) {
        Jet4 F = f(x), W = p.W(x);
        Jet4 Hp = -d(d(F)) + (W * W - d(W)) * F;
        double lhs = (d(Hp) + W * Hp).value();
        Jet4 AF = d(F) + W * F;
        double rhs = (-d(d(AF)) + (W * W + d(W)) * AF).value();
        r = std::max(r, std::abs(lhs - rhs));
    }
    return r;
}

/// Same residual for a plain callable: each operator is applied by central differences of step h to the
/// sampled function it acts on, so the result measures the O(h^2) discretization of both sides.
inline double intertwining_residual(const SusyPair& p, const std::function<double(double)>& f,
                                    const std::vector<double>& xs, double h) {
    auto d1 = [h](const auto& g, double x) { return (g(x + h) - g(x - h)) / (2 * h); };
    auto d2 = [h](const auto& g, double x) { return (g(x + h) - 2 * g(x) + g(x - h)) / (h * h); };
    auto w = [&](double x) { return p.W(x); };
    auto hp = [&](double x) {
        Jet4 W = w(x);
        return -d2(f, x) + (W.value() * W.value() - W.coeff(1)) * f(x);
    };
    auto af = [&](double x) { return d1(f, x) + w(x).value() * f(x); };
    double r = 0.0;
    for (double x : xs) {
        Jet4 W = w(x);
        double lhs = d1(hp, x) + W.value() * hp(x);
        double rhs = -d2(af, x) + (W.value() * W.value() + W.coeff(1)) * af(x);
        r = std::max(r, std::abs(lhs - rhs));
    }
    return r;
}

// ---------------------------------------------------------------------------------------------
// Shape invariance of the case ii extended families

/// Parameters of the shape-invariance partner (l -> l+1 or A -> A+1) and the constant between them.
struct ShapeShift {
    PotentialModel shifted;
    double delta = 0.0;
};

inline bool shape_invariance_eligible(const PotentialModel& m) {
    return m.is_extended() && !(m.is_quadratic() && m.qcase == QuadCase::III);
}

inline ShapeShift shape_shift(const PotentialModel& m) {
    if (!shape_invariance_eligible(m))
        throw UnsupportedError(m.describe() + " has no shape-invariance partner (case iii or conventional)");
    ModelSpec s = m.spec();
    if (m.is_radial())
        s.l += 1;
    else
        s.A += 1;
    return {detail::build_unchecked(s), m.is_radial() ? m.omega : 0.0};
}

/// Wtilde = -d/dx ln psi_0 of the extended model, in the split W1 (conventional) + W2 (rational).
/// W2 = d/dx ln D(params) - d/dx ln D(shifted params), D the rational-term denominator.
template <class S>
S shape_invariance_w(const PotentialModel& m, const S& x) {
    using std::cos;
    using std::sin;
    using std::tan;
    if (!shape_invariance_eligible(m)) throw UnsupportedError(m.describe() + " is not shape invariant");
    if (m.is_radial()) {
        const double w = m.omega, l = m.l;
        S W1 = x * (w / 2) - S(l + 1) / x;
        S t = x * x * w;
        if (m.family == Family::ExtRadialLinear)
            return W1 + x * (2 * w) * (S(1.0) / (t + (2 * l + 1)) - S(1.0) / (t + (2 * l + 3)));
        if (m.qcase == QuadCase::I) {
            const double g = 2 * l + 3, g2 = 2 * l + 5;
            S u = t + g, v = t + g2;
            return W1 + x * (4 * w) * (u / (u * u - 2 * g) - v / (v * v - 2 * g2));
        }
        const double g = 2 * l - 1, g2 = 2 * l + 1;
        S u = t + g, v = t + g2;
        return W1 + x * (4 * w) * (u / (u * u + 2 * g) - v / (v * v + 2 * g2));
    }
    const double A = m.A, B = m.B;
    S s = sin(x), c = cos(x);
    S W1 = tan(x) * A - S(B) / c;
    if (m.family == Family::ExtScarfLinear)
        return W1 + c * (2 * B) * (S(1.0) / (S(2 * A + 1) - s * (2 * B)) - S(1.0) / (S(2 * A - 1) - s * (2 * B)));
    const double k = m.qcase == QuadCase::I ? 2 * B - 2 : 2 * B + 2;
    const double pre = m.qcase == QuadCase::I ? 2 * (2 * B - 1) * (2 * B - 2) : 2 * (2 * B + 1) * (2 * B + 2);
    const DPoly& D0 = m.rational->D;
    const DPoly D1 = shape_shift(m).shifted.rational->D;
    return W1 + c * pre * ((s * k - (2 * A - 1)) / D0(s) - (s * k - (2 * A + 1)) / D1(s));
}

struct ShapeInvarianceReport {
    std::string model;
    std::string partner;
    double delta = 0.0;
    double residual = 0.0;  // max |V(p) + 2 Wtilde' - V(p shifted) - delta| / max(1, |V|)
    double ground_residual = 0.0;  // max |Wtilde^2 - Wtilde' + E0 - V(p) - constant|, E0 the model's ground energy
};

/// Evaluates the shape-invariance identity on a 400-point interior grid.
inline ShapeInvarianceReport shape_invariance_report(const PotentialModel& m) {
    ShapeShift sh = shape_shift(m);
    ShapeInvarianceReport rep;
    rep.model = m.describe();
    rep.partner = sh.shifted.describe();
    rep.delta = sh.delta;
    const double e0 = analytic_spectrum(m, 1).front();
    const int n = 400;
    for (int i = 0; i < n; ++i) {
        double x = m.is_radial() ? 8.0 * (i + 1) / n / std::sqrt(m.omega)
                                 : -std::numbers::pi / 2 + std::numbers::pi * (i + 0.5) / n;
        Jet4 W = shape_invariance_w(m, Jet4::variable(x));
        double v = evaluate(m, x), vs = evaluate(sh.shifted, x);
        double scale = std::max({1.0, std::abs(v), std::abs(vs)});
        rep.residual = std::max(rep.residual, std::abs(v + 2 * W.coeff(1) - vs - sh.delta) / scale);
        double vg = W.value() * W.value() - W.coeff(1) + e0;
        rep.ground_residual = std::max(rep.ground_residual, std::abs(vg - v - m.additive_constant) / scale);
    }
    return rep;
}

}  // namespace ratext
