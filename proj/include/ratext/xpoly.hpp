#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "orthopoly.hpp"

namespace ratext {

/// f -> p(z) f'(z) + q(z) f(z)
template <class T>
struct FirstOrderZOperator {
    Polynomial<T> p;
    Polynomial<T> q;

    Polynomial<T> operator()(const Polynomial<T>& f) const { return p * f.derivative() + q * f; }
};

template <class T>
Polynomial<T> apply_operator(const FirstOrderZOperator<T>& op, const Polynomial<T>& f) {
    return op(f);
}

enum class OperatorKind {
    LaguerreHat1,
    LaguerreHat2,
    LaguerreTilde1,
    LaguerreTilde2,
    LaguerreTilde3,
    JacobiHat1,
    JacobiHat2,
    JacobiTilde1,
    JacobiTilde2,
    JacobiTilde3,
};

inline OperatorKind parse_operator_kind(std::string_view s) {
    static const std::pair<std::string_view, OperatorKind> table[] = {
        {"laguerre-hat1", OperatorKind::LaguerreHat1},     {"laguerre-hat2", OperatorKind::LaguerreHat2},
        {"laguerre-tilde1", OperatorKind::LaguerreTilde1}, {"laguerre-tilde2", OperatorKind::LaguerreTilde2},
        {"laguerre-tilde3", OperatorKind::LaguerreTilde3}, {"jacobi-hat1", OperatorKind::JacobiHat1},
        {"jacobi-hat2", OperatorKind::JacobiHat2},         {"jacobi-tilde1", OperatorKind::JacobiTilde1},
        {"jacobi-tilde2", OperatorKind::JacobiTilde2},     {"jacobi-tilde3", OperatorKind::JacobiTilde3},
    };
    for (const auto& [name, k] : table)
        if (name == s) return k;
    throw UsageError("unknown operator kind '" + std::string(s) + "'");
}

namespace detail {

/// D(z) attached to the first Jacobi-type operator; returns {D, D'}.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> jacobi_tilde1_d(const T& a, const T& b) {
    T dl = b - a, s = b + a;
    Polynomial<T> inner{s * s + dl - T(2), T(-2) * (dl - T(1)) * s, (dl - T(1)) * (dl - T(2))};
    Polynomial<T> D = inner * (dl - T(2));
    return {D, D.derivative()};
}

template <class T>
std::pair<Polynomial<T>, Polynomial<T>> jacobi_tilde3_d(const T& a, const T& b) {
    T s = b + a, dl = b - a;
    Polynomial<T> lin{-dl, s - T(2)};
    Polynomial<T> D = lin * lin * (s - T(1)) + Polynomial<T>::constant((T(2) * a - T(2)) * (T(2) * b - T(2)));
    return {D, D.derivative()};
}

}  // namespace detail

/// The first-order operators generating X1 and quadratic-case polynomials, expanded into (p, q).
template <class T>
FirstOrderZOperator<T> build_operator(OperatorKind kind, const T& a, std::optional<T> beta = std::nullopt) {
    using P = Polynomial<T>;
    const T one(1), two(2);
    auto need_beta = [&]() -> T {
        if (!beta) throw UsageError("Jacobi-type operator needs beta");
        return *beta;
    };
    switch (kind) {
        case OperatorKind::LaguerreHat1:
            return {P{a, one}, P{-a - one, -one}};
        case OperatorKind::LaguerreHat2:
            return {P{T(0), a, one}, P{(a + one) * a, a}};
        case OperatorKind::LaguerreTilde1: {
            P Q{a * (a + one), two * (a + one), one};
            return {Q, -Q - P{two * (a + one), two}};
        }
        case OperatorKind::LaguerreTilde2: {
            P Q{a * (a - one), two * (a - one), one};
            P z{T(0), one};
            return {z * Q, Q * (a + one) - z * P{two * (a - one), two}};
        }
        case OperatorKind::LaguerreTilde3: {
            P Q{a * (a - one), -two * (a - one), one};
            P z{T(0), one};
            return {z * Q, P{a + one, -one} * Q - z * P{-two * (a - one), two}};
        }
        case OperatorKind::JacobiHat1: {
            T b = need_beta();
            P lin{b + a, -(b - a)};
            return {lin * P{one, one}, lin * (b + one) + P{one, one} * (b - a)};
        }
        case OperatorKind::JacobiHat2: {
            T b = need_beta();
            P lin{b + a, -(b - a)};
            return {lin * P{one, -one}, -(lin * (a + one)) + P{one, -one} * (b - a)};
        }
        case OperatorKind::JacobiTilde1: {
            T b = need_beta();
            auto [D, Dd] = detail::jacobi_tilde1_d(a, b);
            return {D * P{one, one}, D * (b + one) - P{one, one} * Dd};
        }
        case OperatorKind::JacobiTilde2: {
            T b = need_beta();
            // mirror image of the first operator: (alpha <-> beta, z -> -z)
            auto [Dm, Ddm] = detail::jacobi_tilde1_d(b, a);
            P D = Dm.reflect();
            P Dd = Ddm.reflect();
            return {D * P{one, -one}, -(D * (a + one)) + P{one, -one} * Dd};
        }
        case OperatorKind::JacobiTilde3: {
            T b = need_beta();
            auto [D, Dd] = detail::jacobi_tilde3_d(a, b);
            P w{one, T(0), -one};
            return {D * w, D * P{b - a, -(b + a + two)} - w * Dd};
        }
    }
    throw UsageError("unknown operator kind");
}

enum class ExceptionalKind { X1Laguerre, L1, L2, L3, X1Jacobi, P1, P3 };

template <class T>
struct ExceptionalFamily {
    ExceptionalKind kind;
    T alpha{};
    T beta{};

    bool is_laguerre_type() const {
        return kind == ExceptionalKind::X1Laguerre || kind == ExceptionalKind::L1 || kind == ExceptionalKind::L2 ||
               kind == ExceptionalKind::L3;
    }
    /// Degree of member nu is nu + offset().
    int offset() const {
        switch (kind) {
            case ExceptionalKind::X1Laguerre:
            case ExceptionalKind::X1Jacobi: return 1;
            case ExceptionalKind::L1:
            case ExceptionalKind::L2:
            case ExceptionalKind::P1: return 2;
            case ExceptionalKind::L3:
            case ExceptionalKind::P3: return 3;
        }
        return 0;
    }
    ClassicalFamily<T> classical() const {
        return is_laguerre_type() ? ClassicalFamily<T>::laguerre(alpha) : ClassicalFamily<T>::jacobi(alpha, beta);
    }
};

inline std::string_view to_string(ExceptionalKind k) {
    switch (k) {
        case ExceptionalKind::X1Laguerre: return "x1-laguerre";
        case ExceptionalKind::L1: return "l1";
        case ExceptionalKind::L2: return "l2";
        case ExceptionalKind::L3: return "l3";
        case ExceptionalKind::X1Jacobi: return "x1-jacobi";
        case ExceptionalKind::P1: return "p1";
        case ExceptionalKind::P3: return "p3";
    }
    return "?";
}

inline ExceptionalKind parse_exceptional_kind(std::string_view s) {
    for (auto k : {ExceptionalKind::X1Laguerre, ExceptionalKind::L1, ExceptionalKind::L2, ExceptionalKind::L3,
                   ExceptionalKind::X1Jacobi, ExceptionalKind::P1, ExceptionalKind::P3})
        if (to_string(k) == s) return k;
    throw UsageError("unknown exceptional family '" + std::string(s) + "'");
}

template <class T>
void validate(const ExceptionalFamily<T>& f) {
    if (f.kind == ExceptionalKind::X1Laguerre) {
        if (!(f.alpha > T(-1))) throw DomainError("X1-Laguerre requires alpha > -1");
    } else if (f.is_laguerre_type()) {
        if (!(f.alpha > T(0))) throw DomainError("Laguerre-type families require alpha > 0");
    } else {
        if (!(f.alpha > T(-1)) || !(f.beta > T(-1))) throw DomainError("Jacobi-type families require alpha, beta > -1");
    }
}

namespace detail {

template <class T>
void require_nonzero(const T& v, const char* what) {
    if (v == T(0)) throw SingularParameterError(std::string("rescale factor vanishes: ") + what);
}

}  // namespace detail

/**
 * Member nu of an exceptional family, built by applying its generating operator to the classical seed
 * and dividing by the rescale factor that fixes the standard normalization.
 */
template <class T>
Polynomial<T> exceptional_polynomial(const ExceptionalFamily<T>& f, int nu) {
    if (nu < 0) throw DomainError("polynomial index must be >= 0");
    validate(f);
    const T a = f.alpha, b = f.beta, n(nu), one(1), two(2);
    switch (f.kind) {
        case ExceptionalKind::X1Laguerre:
            return build_operator(OperatorKind::LaguerreHat1, a)(detail::laguerre_unchecked(a - one, nu));
        case ExceptionalKind::L1:
            return -build_operator(OperatorKind::LaguerreTilde1, a)(detail::laguerre_unchecked(a - one, nu));
        case ExceptionalKind::L2: {
            T k = n + a - one;
            detail::require_nonzero(k, "nu + alpha - 1");
            return build_operator(OperatorKind::LaguerreTilde2, a)(detail::laguerre_unchecked(a + one, nu)) / k;
        }
        case ExceptionalKind::L3:
            return build_operator(OperatorKind::LaguerreTilde3, a)(detail::laguerre_unchecked(a + one, nu)) /
                   (n + T(3));
        case ExceptionalKind::X1Jacobi: {
            if (a == b) throw SingularParameterError("X1-Jacobi is undefined at beta == alpha; use limit_beta_to_alpha");
            T k = two * (b - a) * (b + n);
            detail::require_nonzero(k, "beta + nu");
            return build_operator(OperatorKind::JacobiHat1, a, std::optional<T>(b))(
                       detail::jacobi_unchecked(a - one, b + one, nu)) /
                   k;
        }
        case ExceptionalKind::P1: {
            T dl = b - a;
            T k = T(4) * (dl - one) * (dl - two) * (dl - two) * (n + b - one);
            detail::require_nonzero(k, "(beta-alpha-1)(beta-alpha-2)(nu+beta-1)");
            return build_operator(OperatorKind::JacobiTilde1, a, std::optional<T>(b))(
                       detail::jacobi_unchecked(a - one, b + one, nu)) /
                   k;
        }
        case ExceptionalKind::P3: {
            T s = a + b;
            T k = T(8) * (s - one) * (s - two) * (s - two) * (s + n);
            detail::require_nonzero(k, "(alpha+beta-1)(alpha+beta-2)(alpha+beta+nu)");
            return build_operator(OperatorKind::JacobiTilde3, a, std::optional<T>(b))(
                       detail::jacobi_unchecked(a + one, b + one, nu)) /
                   k;
        }
    }
    return {};
}

/// Classical index -> coefficient. Zero entries may be present when the published form lists them.
template <class T>
using ExpansionCoefficients = std::map<int, T>;

/// Published expansion of member nu in classical polynomials of the same parameters.
template <class T>
ExpansionCoefficients<T> expansion_coefficients(const ExceptionalFamily<T>& f, int nu) {
    if (nu < 0) throw DomainError("polynomial index must be >= 0");
    validate(f);
    const T a = f.alpha, b = f.beta, n(nu), one(1), two(2), four(4);
    ExpansionCoefficients<T> c;
    auto put = [&](int k, const T& v) {
        if (k >= 0) c[k] = v;
    };
    switch (f.kind) {
        case ExceptionalKind::X1Laguerre:
            put(nu + 1, n + one);
            put(nu, -two * (n + a + one));
            put(nu - 1, n + a + one);
            break;
        case ExceptionalKind::L1:
        case ExceptionalKind::L2: {
            T e = f.kind == ExceptionalKind::L1 ? T(2) : T(1);  // nu + alpha + e
            T last = f.kind == ExceptionalKind::L1 ? (n + a + two) * (n + a - one) : (n + a + one) * (n + a);
            put(nu + 2, (n + two) * (n + one));
            put(nu + 1, -four * (n + one) * (n + a + e));
            put(nu, two * (n + a + e) * (T(3) * n + two * a + e));
            put(nu - 1, -four * (n + a + e) * (n + a));
            put(nu - 2, last);
            break;
        }
        case ExceptionalKind::L3:
            put(nu + 3, (n + two) * (n + one));
            put(nu + 2, -four * (n + two) * (n + one));
            put(nu + 1, two * (n + one) * (T(3) * n + a + T(5)));
            put(nu, -four * (n + one) * (n + a + one));
            put(nu - 1, (n + a + one) * (n + a));
            put(nu - 2, T(0));
            put(nu - 3, T(0));
            break;
        case ExceptionalKind::X1Jacobi: {
            if (a == b) throw SingularParameterError("X1-Jacobi is undefined at beta == alpha; use limit_beta_to_alpha");
            T s = a + b, dl = b - a;
            if (nu == 0) {
                put(1, -one / (s + two));
                put(0, two * (a + one) * (b + one) / (dl * (s + two)));
            } else {
                put(nu + 1, -(n + one) * (s + n + one) / ((s + two * n + one) * (s + two * n + two)));
                put(nu, two * s / dl * (a + n + one) * (b + n + one) / ((s + two * n) * (s + two * n + two)));
                put(nu - 1, -(a + n + one) * (b + n + one) / ((s + two * n) * (s + two * n + one)));
            }
            break;
        }
        case ExceptionalKind::P1:
        case ExceptionalKind::P3:
            throw UnsupportedError(std::string("no published classical expansion for ") +
                                   std::string(to_string(f.kind)));
    }
    return c;
}

/// Sum of c_k times the classical polynomial of index k.
template <class T>
Polynomial<T> expand(const ExpansionCoefficients<T>& c, const ClassicalFamily<T>& fam) {
    Polynomial<T> acc;
    for (const auto& [k, v] : c)
        if (v != T(0)) acc += classical_polynomial(fam, k) * v;
    return acc;
}

/// Exact coordinates of p in the classical basis, by triangular elimination from the top degree.
template <class T>
ExpansionCoefficients<T> classical_decomposition(Polynomial<T> p, const ClassicalFamily<T>& fam) {
    ExpansionCoefficients<T> c;
    for (int k = p.degree(); k >= 0; --k) {
        auto ck = classical_polynomial(fam, k);
        T v = p[k] / ck.leading();
        c[k] = v;
        if (v != T(0)) p -= ck * v;
    }
    return c;
}

/// lim_{beta->alpha} (beta-alpha) Phat_{nu+1}^{(alpha,beta)}: the middle expansion term at beta = alpha.
template <class T>
Polynomial<T> limit_beta_to_alpha(int nu, const T& alpha) {
    if (nu < 0) throw DomainError("polynomial index must be >= 0");
    if (!(alpha > T(-1))) throw DomainError("limit_beta_to_alpha requires alpha > -1");
    const T n(nu), one(1);
    T coef = nu == 0 ? alpha + one : alpha * (alpha + n + one) / (alpha + n);
    return detail::jacobi_unchecked(alpha, alpha, nu) * coef;
}

/// lim_{alpha->0} Phat_{nu+1}^{(alpha,beta)} = -((beta+nu+1)/(4 nu)) (1-z)^2 P^{(2,beta)}_{nu-1}.
template <class T>
Polynomial<T> limit_alpha_to_zero(int nu, const T& beta) {
    if (nu < 1) throw UnsupportedError("limit_alpha_to_zero is stated for nu >= 1");
    if (!(beta > T(-1))) throw DomainError("limit_alpha_to_zero requires beta > -1");
    if (beta == T(0)) throw DomainError("limit_alpha_to_zero does not hold at beta = 0");
    const T n(nu);
    Polynomial<T> w{T(1), T(-1)};
    return w * w * detail::jacobi_unchecked(T(2), beta, nu - 1) * (-(beta + n + T(1)) / (T(4) * n));
}

}  // namespace ratext
