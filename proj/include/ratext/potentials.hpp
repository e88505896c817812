#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "jet.hpp"
#include "polynomial.hpp"

namespace ratext {

enum class Family { RadialOsc, Scarf1, ExtRadialLinear, ExtRadialQuad, ExtScarfLinear, ExtScarfQuad };
enum class QuadCase { I, II, III };
/// Sign choice in the linear extensions: upper starts from V_{l+1} / V_{A,B+1}, lower from V_{l-1} / V_{A,B-1}.
enum class Branch { Upper, Lower };
enum class DomainKind { HalfLine, Interval };
enum class SusyCase { i, ii, iii };
/// Energy origin for spectra: Bare is -d2 + V, Partner adds the model's additive constant (the SUSY partner V^(-)).
enum class EnergyOrigin { Bare, Partner };

std::string_view to_string(Family f);
Family parse_family(std::string_view s);

inline std::string_view to_string(Family f) {
    switch (f) {
        case Family::RadialOsc: return "radial";
        case Family::Scarf1: return "scarf";
        case Family::ExtRadialLinear: return "radial-ext-linear";
        case Family::ExtRadialQuad: return "radial-ext-quad";
        case Family::ExtScarfLinear: return "scarf-ext-linear";
        case Family::ExtScarfQuad: return "scarf-ext-quad";
    }
    return "?";
}

inline Family parse_family(std::string_view s) {
    for (auto f : {Family::RadialOsc, Family::Scarf1, Family::ExtRadialLinear, Family::ExtRadialQuad,
                   Family::ExtScarfLinear, Family::ExtScarfQuad})
        if (to_string(f) == s) return f;
    throw UsageError("unknown family '" + std::string(s) + "'");
}

inline std::string_view to_string(QuadCase c) {
    switch (c) {
        case QuadCase::I: return "I";
        case QuadCase::II: return "II";
        case QuadCase::III: return "III";
    }
    return "?";
}

inline QuadCase parse_case(std::string_view s) {
    if (s == "I" || s == "i" || s == "1") return QuadCase::I;
    if (s == "II" || s == "ii" || s == "2") return QuadCase::II;
    if (s == "III" || s == "iii" || s == "3") return QuadCase::III;
    throw UsageError("unknown case '" + std::string(s) + "' (expected I, II or III)");
}

inline std::string_view to_string(Branch b) { return b == Branch::Upper ? "upper" : "lower"; }
inline Branch parse_branch(std::string_view s) {
    if (s == "upper") return Branch::Upper;
    if (s == "lower") return Branch::Lower;
    throw UsageError("unknown branch '" + std::string(s) + "' (expected upper or lower)");
}

inline std::string_view to_string(SusyCase c) {
    switch (c) {
        case SusyCase::i: return "i";
        case SusyCase::ii: return "ii";
        case SusyCase::iii: return "iii";
    }
    return "?";
}

inline std::string_view to_string(EnergyOrigin o) { return o == EnergyOrigin::Bare ? "bare" : "partner"; }
inline EnergyOrigin parse_origin(std::string_view s) {
    if (s == "bare") return EnergyOrigin::Bare;
    if (s == "partner") return EnergyOrigin::Partner;
    throw UsageError("unknown energy origin '" + std::string(s) + "' (expected bare or partner)");
}

/// User-facing description of a model before validation.
struct ModelSpec {
    Family family = Family::RadialOsc;
    double omega = 1.0;
    double l = 0.0;
    double A = 0.0;
    double B = 0.0;
    std::optional<QuadCase> qcase;
    std::optional<Branch> branch;
};

/// Rational part N1/D + N2/D^2 in t = omega x^2 (radial) or t = sin x (Scarf).
struct RationalTerms {
    DPoly N1, N2, D;
};

struct PotentialModel {
    Family family = Family::RadialOsc;
    double omega = 0.0, l = 0.0;  // radial
    double A = 0.0, B = 0.0;      // Scarf
    QuadCase qcase = QuadCase::I;
    Branch branch = Branch::Upper;
    DomainKind domain = DomainKind::HalfLine;
    double additive_constant = 0.0;
    std::optional<double> gamma;
    std::optional<RationalTerms> rational;

    bool is_radial() const { return domain == DomainKind::HalfLine; }
    bool is_extended() const { return family != Family::RadialOsc && family != Family::Scarf1; }
    bool is_quadratic() const { return family == Family::ExtRadialQuad || family == Family::ExtScarfQuad; }
    bool has_case() const { return is_quadratic(); }
    bool has_branch() const { return family == Family::ExtRadialLinear || family == Family::ExtScarfLinear; }
    double lower() const { return is_radial() ? 0.0 : -std::numbers::pi / 2; }
    double upper() const { return is_radial() ? std::numeric_limits<double>::infinity() : std::numbers::pi / 2; }
    bool contains(double x) const { return x > lower() && x < upper(); }

    ModelSpec spec() const {
        ModelSpec s{family, omega, l, A, B, std::nullopt, std::nullopt};
        if (has_case()) s.qcase = qcase;
        if (has_branch()) s.branch = branch;
        return s;
    }
    std::string describe() const;
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

inline RationalTerms radial_terms(Family f, QuadCase c, double w, double l) {
    if (f == Family::ExtRadialLinear) {
        double k = 2 * l + 1;
        return {DPoly{4 * w}, DPoly{-8 * w * k}, DPoly{k, 1.0}};
    }
    if (c == QuadCase::I) {
        double g = 2 * l + 3;
        return {DPoly{-8 * w * g, 8 * w}, DPoly{0.0, 64 * g * w}, DPoly{g * g - 2 * g, 2 * g, 1.0}};
    }
    double g = 2 * l - 1;
    double s = c == QuadCase::II ? 1.0 : -1.0;
    return {DPoly{-8 * w * s * g, 8 * w}, DPoly{0.0, -64 * g * w}, DPoly{g * g + 2 * g, 2 * s * g, 1.0}};
}

inline RationalTerms scarf_terms(Family f, QuadCase c, double A, double B) {
    if (f == Family::ExtScarfLinear) {
        double k = 2 * A - 1;
        return {DPoly{2 * k}, DPoly{-2 * (k * k - 4 * B * B)}, DPoly{k, -2 * B}};
    }
    const double a2 = 2 * A, b2 = 2 * B;
    switch (c) {
        case QuadCase::I: {
            DPoly lin{-(a2 - 1), b2 - 2};
            return {DPoly{-4 * (2 * (a2 - 1) * (a2 - 1) - (b2 - 2) * (b2 - 2) * (b2 + 1)),
                          -4 * (a2 - 1) * (b2 - 1) * (b2 - 2)},
                    DPoly{-(a2 - 1) * (a2 - 1) - B * 2 * (b2 - 2), 2 * (a2 - 1) * (b2 - 1)} *
                        (-8 * (b2 - 2) * (a2 - b2 + 1) * (a2 + b2 - 3)),
                    lin * lin * (b2 - 1) - DPoly{(a2 - b2 + 1) * (a2 + b2 - 3)}};
        }
        case QuadCase::II: {
            DPoly lin{-(a2 - 1), b2 + 2};
            return {DPoly{-4 * (-2 * (a2 - 1) * (a2 - 1) - (b2 + 2) * (b2 + 2) * (b2 - 1)),
                          -4 * (a2 - 1) * (b2 + 1) * (b2 + 2)},
                    DPoly{-(a2 - 1) * (a2 - 1) - B * 2 * (b2 + 2), 2 * (a2 - 1) * (b2 + 1)} *
                        (8 * (b2 + 2) * (a2 - b2 - 3) * (a2 + b2 + 1)),
                    lin * lin * (b2 + 1) + DPoly{(a2 - b2 - 3) * (a2 + b2 + 1)}};
        }
        case QuadCase::III: {
            DPoly lin{-b2, a2 - 3};
            return {DPoly{-8 * (-A * (a2 - 3) * (a2 - 3) + 4 * B * B), -8 * B * (a2 - 2) * (a2 - 3)},
                    DPoly{-4 * B * B - (a2 - 1) * (a2 - 3), 4 * B * (a2 - 2)} *
                        (8 * (a2 - 3) * (a2 - b2 - 3) * (a2 + b2 - 3)),
                    lin * lin * (a2 - 2) + DPoly{(a2 - b2 - 3) * (a2 + b2 - 3)}};
        }
    }
    return {};
}

inline double additive_constant_of(Family f, QuadCase c, Branch br, double w) {
    switch (f) {
        case Family::ExtRadialLinear: return br == Branch::Upper ? w : -w;
        case Family::ExtRadialQuad: return c == QuadCase::II ? w : -w;
        default: return 0.0;
    }
}

/// Builds the model without range checks (used for start models, which may sit outside the user-facing ranges).
inline PotentialModel build_unchecked(const ModelSpec& s) {
    PotentialModel m;
    m.family = s.family;
    m.omega = s.omega;
    m.l = s.l;
    m.A = s.A;
    m.B = s.B;
    m.qcase = s.qcase.value_or(QuadCase::I);
    bool radial = s.family == Family::RadialOsc || s.family == Family::ExtRadialLinear ||
                  s.family == Family::ExtRadialQuad;
    m.domain = radial ? DomainKind::HalfLine : DomainKind::Interval;
    if (s.family == Family::ExtRadialLinear)
        m.branch = s.branch.value_or(s.l == 0.0 ? Branch::Upper : Branch::Lower);
    else
        m.branch = s.branch.value_or(Branch::Upper);
    if (!radial) m.omega = 0.0, m.l = 0.0;
    if (radial) m.A = 0.0, m.B = 0.0;
    if (s.family == Family::ExtRadialQuad) m.gamma = m.qcase == QuadCase::I ? 2 * s.l + 3 : 2 * s.l - 1;
    m.additive_constant = additive_constant_of(s.family, m.qcase, m.branch, s.omega);
    if (s.family == Family::ExtRadialLinear || s.family == Family::ExtRadialQuad)
        m.rational = radial_terms(s.family, m.qcase, s.omega, s.l);
    if (s.family == Family::ExtScarfLinear || s.family == Family::ExtScarfQuad)
        m.rational = scarf_terms(s.family, m.qcase, s.A, s.B);
    return m;
}

}  // namespace detail

inline std::string PotentialModel::describe() const {
    std::string s(to_string(family));
    if (is_radial())
        s += "(omega=" + detail::fmt(omega) + ", l=" + detail::fmt(l);
    else
        s += "(A=" + detail::fmt(A) + ", B=" + detail::fmt(B);
    if (has_case()) s += ", case " + std::string(to_string(qcase));
    if (has_branch()) s += ", " + std::string(to_string(branch));
    return s + ")";
}

// ---------------------------------------------------------------------------------------------
// Parameter gates

/// Root structure of g(z) = z^2 + c z + d for the quadratic radial extension.
enum class RadialRootCondition { TwoNegativeRoots, ComplexPair, None };

inline RadialRootCondition radial_root_condition(double c, double d) {
    if (c > 0 && d > 0 && d <= c * c / 4) return RadialRootCondition::TwoNegativeRoots;
    if (d > c * c / 4) return RadialRootCondition::ComplexPair;
    return RadialRootCondition::None;
}

/// (a, b) of the superpotential ansatz a x + b/x - g'/g for each quadratic radial case.
inline std::pair<double, double> radial_quad_ab(QuadCase c, double omega, double l) {
    switch (c) {
        case QuadCase::I: return {-omega / 2, -l};
        case QuadCase::II: return {omega / 2, l + 1};
        case QuadCase::III: return {-omega / 2, l + 1};
    }
    return {0, 0};
}

/// Which (a, b) assignment the quadratic Scarf ansatz uses, in terms of (A, B).
enum class ScarfLink { MinusBHalf /* (-B-1/2, A-1/2) */, BHalf /* (B-1/2, -A+1/2) */, MinusA /* (-A, B) */ };
/// Root-location condition on g(s) = s^2 + c s + d keeping it nonzero on [-1, 1].
enum class ScarfRootCondition { OneA, OneB, Two, None };

inline std::pair<double, double> scarf_link_ab(ScarfLink k, double A, double B) {
    switch (k) {
        case ScarfLink::MinusBHalf: return {-B - 0.5, A - 0.5};
        case ScarfLink::BHalf: return {B - 0.5, -A + 0.5};
        case ScarfLink::MinusA: return {-A, B};
    }
    return {0, 0};
}

inline std::pair<double, double> scarf_quad_cd(double a, double b) {
    return {4 * b / (2 * a + 3), (4 * b * b - (2 * a + 3)) / (2 * (a + 1) * (2 * a + 3))};
}

inline ScarfRootCondition scarf_root_condition(double c, double d) {
    double ac = std::abs(c);
    if (1 < ac - 1 && ac - 1 < d && d <= c * c / 4) return ScarfRootCondition::OneA;
    if (d < -ac - 1) return ScarfRootCondition::OneB;
    if (d > c * c / 4) return ScarfRootCondition::Two;
    return ScarfRootCondition::None;
}

inline std::string_view to_string(ScarfRootCondition c) {
    switch (c) {
        case ScarfRootCondition::OneA: return "1a";
        case ScarfRootCondition::OneB: return "1b";
        case ScarfRootCondition::Two: return "2";
        case ScarfRootCondition::None: return "none";
    }
    return "?";
}

/// One row of the parameter-region table for the quadratic Scarf extension.
struct ScarfQuadRegion {
    int row;
    ScarfLink link;
    ScarfRootCondition condition;
    std::string region;
    std::function<bool(double, double)> contains;
    std::optional<QuadCase> constructible;
};

inline const std::vector<ScarfQuadRegion>& scarf_quad_regions() {
    using L = ScarfLink;
    using C = ScarfRootCondition;
    static const std::vector<ScarfQuadRegion> rows{
        {1, L::MinusBHalf, C::OneA, "1 < B < A-1", [](double A, double B) { return 1 < B && B < A - 1; }, QuadCase::I},
        {2, L::MinusBHalf, C::OneB, "3/2 < A < 2, 1/2 < B < A-1",
         [](double A, double B) { return 1.5 < A && A < 2 && 0.5 < B && B < A - 1; }, std::nullopt},
        {3, L::MinusBHalf, C::OneB, "A >= 2, 1/2 < B < 1",
         [](double A, double B) { return A >= 2 && 0.5 < B && B < 1; }, std::nullopt},
        {4, L::MinusBHalf, C::Two, "5/4 < A < 3/2, 3/2-A < B < A-1",
         [](double A, double B) { return 1.25 < A && A < 1.5 && 1.5 - A < B && B < A - 1; }, std::nullopt},
        {5, L::MinusBHalf, C::Two, "A >= 3/2, 0 < B < 1/2",
         [](double A, double B) { return A >= 1.5 && 0 < B && B < 0.5; }, std::nullopt},
        {6, L::BHalf, C::Two, "0 < B < A-3/2", [](double A, double B) { return 0 < B && B < A - 1.5; }, QuadCase::II},
        {7, L::MinusA, C::Two, "1 < A <= 5/4, 0 < B < A-1",
         [](double A, double B) { return 1 < A && A <= 1.25 && 0 < B && B < A - 1; }, std::nullopt},
        {8, L::MinusA, C::Two, "5/4 < A < 3/2, 0 < B < 3/2-A",
         [](double A, double B) { return 1.25 < A && A < 1.5 && 0 < B && B < 1.5 - A; }, std::nullopt},
        {9, L::MinusA, C::Two, "0 < B < A-3/2", [](double A, double B) { return 0 < B && B < A - 1.5; }, QuadCase::III},
    };
    return rows;
}

namespace detail {

inline ScarfLink link_of(QuadCase c) {
    switch (c) {
        case QuadCase::I: return ScarfLink::MinusBHalf;
        case QuadCase::II: return ScarfLink::BHalf;
        case QuadCase::III: return ScarfLink::MinusA;
    }
    return ScarfLink::MinusA;
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ParameterError(what);
}

inline void validate_spec(const ModelSpec& s) {
    const std::string name(to_string(s.family));
    auto finite = [](double v) { return std::isfinite(v); };
    switch (s.family) {
        case Family::RadialOsc:
        case Family::ExtRadialLinear:
        case Family::ExtRadialQuad:
            require(finite(s.omega) && finite(s.l), name + ": parameters must be finite");
            require(s.omega > 0, name + " requires omega > 0");
            break;
        case Family::Scarf1:
        case Family::ExtScarfLinear:
        case Family::ExtScarfQuad:
            require(finite(s.A) && finite(s.B), name + ": parameters must be finite");
            break;
    }
    if (s.qcase && s.family != Family::ExtRadialQuad && s.family != Family::ExtScarfQuad)
        throw ParameterError(name + " takes no case");
    if (s.branch && s.family != Family::ExtRadialLinear && s.family != Family::ExtScarfLinear)
        throw ParameterError(name + " takes no branch");
    if ((s.family == Family::ExtRadialQuad || s.family == Family::ExtScarfQuad) && !s.qcase)
        throw ParameterError(name + " requires a case (I, II or III)");

    switch (s.family) {
        case Family::RadialOsc: require(s.l >= 0, "radial requires l >= 0"); break;
        case Family::ExtRadialLinear:
            require(s.l >= 0, "radial-ext-linear requires l >= 0");
            require(!(s.l == 0 && s.branch == Branch::Lower),
                    "radial-ext-linear at l = 0 admits only the upper-sign start (V_{l-1} undefined)");
            break;
        case Family::ExtRadialQuad: {
            require(s.l > 0, "radial-ext-quad requires l > 0");
            auto [a, b] = radial_quad_ab(*s.qcase, s.omega, s.l);
            double c = (2 * b - 3) / a, d = (2 * b - 1) * (2 * b - 3) / (4 * a * a);
            auto cond = radial_root_condition(c, d);
            if (*s.qcase == QuadCase::I)
                require(cond == RadialRootCondition::TwoNegativeRoots,
                        "radial-ext-quad case I requires g to have two negative roots (c > 0, 0 < d <= c^2/4)");
            else
                require(cond == RadialRootCondition::ComplexPair,
                        "radial-ext-quad case " + std::string(to_string(*s.qcase)) +
                            " requires complex roots of g (d > c^2/4), i.e. l > 1/2");
            break;
        }
        case Family::Scarf1:
            require(0 < s.B && s.B < s.A - 1, "scarf requires 0 < B < A-1");
            break;
        case Family::ExtScarfLinear:
            require(0 < s.B && s.B < s.A - 1, "scarf-ext-linear requires 0 < B < A-1");
            break;
        case Family::ExtScarfQuad: {
            const auto& rows = scarf_quad_regions();
            const ScarfLink link = link_of(*s.qcase);
            for (const auto& r : rows)
                if (r.constructible == s.qcase) {
                    if (r.contains(s.A, s.B)) return;
                    std::string msg = "scarf-ext-quad case " + std::string(to_string(*s.qcase)) + " requires " +
                                      r.region;
                    for (const auto& o : rows)
                        if (o.link == link && !o.constructible && o.contains(s.A, s.B))
                            msg += "; (A, B) lies in non-constructible region row " + std::to_string(o.row) + " (" +
                                   o.region + ", condition " + std::string(to_string(o.condition)) + ")";
                    throw ParameterError(msg);
                }
            break;
        }
    }
}

}  // namespace detail

/// Validated model. Throws ParameterError naming the violated condition.
inline PotentialModel make_model(const ModelSpec& s) {
    detail::validate_spec(s);
    return detail::build_unchecked(s);
}

// ---------------------------------------------------------------------------------------------
// Evaluation

/// V(x) without the additive constant. S may be double or a Jet.
template <class S>
S evaluate_at(const PotentialModel& m, const S& x) {
    using std::cos;
    using std::sin;
    using std::tan;
    if (!m.contains(value_of(x)))
        throw DomainError("x = " + detail::fmt(value_of(x)) + " outside the open domain of " + m.describe());
    S v;
    S t;
    if (m.is_radial()) {
        const double w = m.omega, l = m.l;
        v = x * x * (w * w / 4) + S(l * (l + 1)) / (x * x);
        t = x * x * w;
    } else {
        S sc = S(1.0) / cos(x);
        v = sc * sc * (m.A * (m.A - 1) + m.B * m.B) - sc * tan(x) * (m.B * (2 * m.A - 1));
        t = sin(x);
    }
    if (m.rational) {
        S D = m.rational->D(t);
        v = v + m.rational->N1(t) / D + m.rational->N2(t) / (D * D);
    }
    return v;
}

inline double evaluate(const PotentialModel& m, double x) { return evaluate_at(m, x); }

/// The conventional potential V^(+) the SUSY construction starts from.
inline PotentialModel start_model(const PotentialModel& m) {
    ModelSpec s;
    s.omega = m.omega;
    s.l = m.l;
    s.A = m.A;
    s.B = m.B;
    const double sb = m.branch == Branch::Upper ? 1.0 : -1.0;
    switch (m.family) {
        case Family::RadialOsc:
        case Family::Scarf1: return m;
        case Family::ExtRadialLinear:
            s.family = Family::RadialOsc;
            s.l = m.l + sb;
            break;
        case Family::ExtRadialQuad:
            s.family = Family::RadialOsc;
            s.l = m.qcase == QuadCase::I ? m.l - 1 : m.l + 1;
            break;
        case Family::ExtScarfLinear:
            s.family = Family::Scarf1;
            s.B = m.B + sb;
            break;
        case Family::ExtScarfQuad:
            s.family = Family::Scarf1;
            if (m.qcase == QuadCase::I) s.B = m.B + 1;
            if (m.qcase == QuadCase::II) s.B = m.B - 1;
            if (m.qcase == QuadCase::III) s.A = m.A + 1;
            break;
    }
    return detail::build_unchecked(s);
}

/// Same extended model with the other linear branch (same potential, different start and constant).
inline PotentialModel with_branch(const PotentialModel& m, Branch b) {
    ModelSpec s = m.spec();
    s.branch = b;
    return make_model(s);
}

// ---------------------------------------------------------------------------------------------
// Superpotentials and factorization

/// W = a x + b/x - d/dx ln g(x^2) (radial) or a tan x + b sec x - d/dx ln g(sin x) (Scarf).
struct SuperpotentialSpec {
    double a = 0.0;
    double b = 0.0;
    DPoly g{1.0};
    DomainKind domain = DomainKind::HalfLine;
    std::string tag;
};

template <class S>
S superpotential_at(const SuperpotentialSpec& w, const S& x) {
    using std::cos;
    using std::sin;
    using std::tan;
    if (w.domain == DomainKind::HalfLine) {
        S y = x * x;
        S r = x * w.a + S(w.b) / x;
        if (w.g.degree() > 0) r = r - x * 2.0 * w.g.derivative()(y) / w.g(y);
        return r;
    }
    S r = tan(x) * w.a + S(w.b) / cos(x);
    if (w.g.degree() > 0) {
        S s = sin(x);
        r = r - cos(x) * w.g.derivative()(s) / w.g(s);
    }
    return r;
}

/// Boundary behaviour of a factorization function phi.
/// Radial: phi ~ x^left_power at 0 and ~ exp(-gauss_rate x^2) at infinity.
/// Scarf: phi ~ d^left_power at -pi/2 and d^right_power at +pi/2, d the distance to the endpoint.
struct PhiDescriptor {
    DomainKind domain = DomainKind::HalfLine;
    double left_power = 0.0;
    double right_power = 0.0;
    double gauss_rate = 0.0;
    DPoly g{1.0};

    PhiDescriptor inverse() const {
        PhiDescriptor r = *this;
        r.left_power = -left_power;
        r.right_power = -right_power;
        r.gauss_rate = -gauss_rate;
        return r;
    }
};

namespace detail {

constexpr double kBorderlineTol = 1e-12;

enum class EndpointVerdict { Admissible, Inadmissible, Borderline };

/// phi ~ d^p at a finite endpoint: admissible when it vanishes there (p > 0, which implies square integrability).
/// |phi|^2 ~ d^-1 (p = -1/2) and p = 0 are flagged as borderline.
inline EndpointVerdict finite_endpoint(double p) {
    if (std::abs(2 * p + 1) < kBorderlineTol || std::abs(p) < kBorderlineTol) return EndpointVerdict::Borderline;
    return p > 0 ? EndpointVerdict::Admissible : EndpointVerdict::Inadmissible;
}

inline EndpointVerdict infinite_endpoint(double rate) {
    if (std::abs(rate) < kBorderlineTol) return EndpointVerdict::Borderline;
    return rate > 0 ? EndpointVerdict::Admissible : EndpointVerdict::Inadmissible;
}

/// true/false, or throws when the answer hinges on a borderline endpoint.
inline bool normalizable(const PhiDescriptor& phi) {
    EndpointVerdict e1 = finite_endpoint(phi.left_power);
    EndpointVerdict e2 = phi.domain == DomainKind::HalfLine ? infinite_endpoint(phi.gauss_rate)
                                                            : finite_endpoint(phi.right_power);
    if (e1 == EndpointVerdict::Inadmissible || e2 == EndpointVerdict::Inadmissible) return false;
    if (e1 == EndpointVerdict::Borderline || e2 == EndpointVerdict::Borderline)
        throw NumericError("borderline normalizability of the factorization function (|phi|^2 ~ d^-1 or d^0)");
    return true;
}

}  // namespace detail

/// SUSY case from the asymptotics of phi: i if phi is a bound state, iii if 1/phi is, ii otherwise.
inline SusyCase classify(const PhiDescriptor& phi) {
    if (detail::normalizable(phi)) return SusyCase::i;
    if (detail::normalizable(phi.inverse())) return SusyCase::iii;
    return SusyCase::ii;
}

struct FactorizationData {
    double E = 0.0;
    PhiDescriptor phi;
    SusyCase susy_case = SusyCase::ii;
};

inline SuperpotentialSpec superpotential(const PotentialModel& m) {
    SuperpotentialSpec w;
    w.domain = m.domain;
    const double sb = m.branch == Branch::Upper ? 1.0 : -1.0;
    switch (m.family) {
        case Family::RadialOsc:
            w.a = m.omega / 2;
            w.b = -(m.l + 1);
            w.tag = "radial";
            return w;
        case Family::Scarf1:
            w.a = m.A;
            w.b = -m.B;
            w.tag = "scarf";
            return w;
        case Family::ExtRadialLinear: {
            w.a = sb * m.omega / 2;
            w.b = sb * (m.l + 0.5 + sb * 0.5);
            w.g = DPoly{(2 * w.b - 1) / (2 * w.a), 1.0};
            w.tag = m.branch == Branch::Upper ? "radial-linear-upper" : "radial-linear-lower";
            return w;
        }
        case Family::ExtRadialQuad: {
            auto [a, b] = radial_quad_ab(m.qcase, m.omega, m.l);
            w.a = a;
            w.b = b;
            double c = (2 * b - 3) / a, d = (2 * b - 1) * (2 * b - 3) / (4 * a * a);
            w.g = DPoly{d, c, 1.0};
            w.tag = "radial-quad-" + std::string(to_string(m.qcase));
            return w;
        }
        case Family::ExtScarfLinear: {
            auto [a, b] = scarf_link_ab(m.branch == Branch::Upper ? ScarfLink::MinusBHalf : ScarfLink::BHalf, m.A, m.B);
            w.a = a;
            w.b = b;
            w.g = DPoly{2 * b / (2 * a + 1), 1.0};
            w.tag = m.branch == Branch::Upper ? "scarf-linear-upper" : "scarf-linear-lower";
            return w;
        }
        case Family::ExtScarfQuad: {
            auto [a, b] = scarf_link_ab(detail::link_of(m.qcase), m.A, m.B);
            w.a = a;
            w.b = b;
            auto [c, d] = scarf_quad_cd(a, b);
            w.g = DPoly{d, c, 1.0};
            w.tag = "scarf-quad-" + std::string(to_string(m.qcase));
            return w;
        }
    }
    return w;
}

/// Factorization energy from the ansatz constraints.
inline double factorization_energy(const PotentialModel& m, const SuperpotentialSpec& w) {
    switch (m.family) {
        case Family::RadialOsc: return m.omega * (m.l + 1.5);
        case Family::Scarf1: return m.A * m.A;
        case Family::ExtRadialLinear: return -w.a * (2 * w.b - 5);
        case Family::ExtRadialQuad: return -w.a * (2 * w.b - 9);
        case Family::ExtScarfLinear: return (w.a + 1) * (w.a + 1);
        case Family::ExtScarfQuad: return (w.a + 2) * (w.a + 2);
    }
    return 0.0;
}

inline PhiDescriptor phi_descriptor(const SuperpotentialSpec& w) {
    PhiDescriptor p;
    p.domain = w.domain;
    p.g = w.g;
    if (w.domain == DomainKind::HalfLine) {
        p.left_power = -w.b;
        p.gauss_rate = w.a / 2;
    } else {
        // phi = (1 - sin x)^{(a+b)/2} (1 + sin x)^{(a-b)/2} g(sin x); 1 -+ sin x ~ d^2 / 2
        p.right_power = w.a + w.b;
        p.left_power = w.a - w.b;
    }
    return p;
}

inline FactorizationData factorization(const PotentialModel& m) {
    SuperpotentialSpec w = superpotential(m);
    FactorizationData f;
    f.E = factorization_energy(m, w);
    f.phi = phi_descriptor(w);
    f.susy_case = classify(f.phi);
    return f;
}

/// phi(x) itself (unnormalized), as a jet-capable closed form.
template <class S>
S phi_at(const SuperpotentialSpec& w, const S& x) {
    using std::cos;
    using std::exp;
    using std::pow;
    using std::sin;
    if (w.domain == DomainKind::HalfLine) return pow(x, -w.b) * w.g(x * x) * exp(x * x * (-w.a / 2));
    S s = sin(x);
    return pow(S(1.0) - s, (w.a + w.b) / 2) * pow(S(1.0) + s, (w.a - w.b) / 2) * w.g(s);
}

// ---------------------------------------------------------------------------------------------
// Spectra

/// Lowest `count` energies. Partner origin includes the additive constant (energies of V^(-)).
inline std::vector<double> analytic_spectrum(const PotentialModel& m, int count,
                                             EnergyOrigin origin = EnergyOrigin::Partner) {
    if (count < 1) throw UsageError("analytic_spectrum needs count >= 1");
    std::vector<double> e;
    e.reserve(count);
    auto conventional = [](const PotentialModel& c, int nu) {
        return c.is_radial() ? c.omega * (2.0 * nu + c.l + 1.5) : (c.A + nu) * (c.A + nu);
    };
    if (!m.is_extended()) {
        for (int nu = 0; nu < count; ++nu) e.push_back(conventional(m, nu));
        return e;
    }
    PotentialModel start = start_model(m);
    FactorizationData f = factorization(m);
    int shift = 0;
    if (f.susy_case == SusyCase::iii) {
        e.push_back(f.E);
        shift = 1;
    }
    for (int nu = 0; static_cast<int>(e.size()) < count; ++nu) e.push_back(conventional(start, nu));
    (void)shift;
    if (origin == EnergyOrigin::Bare)
        for (auto& v : e) v -= m.additive_constant;
    return e;
}

/// Root isolation: number of zeros of the rational-term denominator inside the domain image.
inline int denominator_roots_in_domain(const PotentialModel& m) {
    if (!m.rational) return 0;
    if (m.is_radial()) return count_real_roots<double>(m.rational->D, 0.0, std::nullopt);
    return count_real_roots<double>(m.rational->D, -1.0, 1.0);
}

// ---------------------------------------------------------------------------------------------
// Ansatz constraint eliminations (exact in T)

template <class T>
struct RadialLinearAnsatz {
    T c, E;
};
template <class T>
RadialLinearAnsatz<T> radial_linear_ansatz(const T& a, const T& b) {
    return {(T(2) * b - T(1)) / (T(2) * a), -a * (T(2) * b - T(5))};
}

template <class T>
struct QuadraticAnsatz {
    T c, d, E;
};
template <class T>
QuadraticAnsatz<T> radial_quad_ansatz(const T& a, const T& b) {
    return {(T(2) * b - T(3)) / a, (T(2) * b - T(1)) * (T(2) * b - T(3)) / (T(4) * a * a), -a * (T(2) * b - T(9))};
}

template <class T>
RadialLinearAnsatz<T> scarf_linear_ansatz(const T& a, const T& b) {
    return {T(2) * b / (T(2) * a + T(1)), (a + T(1)) * (a + T(1))};
}

template <class T>
QuadraticAnsatz<T> scarf_quad_ansatz(const T& a, const T& b) {
    T k = T(2) * a + T(3);
    return {T(4) * b / k, (T(4) * b * b - k) / (T(2) * (a + T(1)) * k), (a + T(2)) * (a + T(2))};
}

}  // namespace ratext
