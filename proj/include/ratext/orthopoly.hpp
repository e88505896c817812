#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "polynomial.hpp"
#include "special.hpp"

namespace ratext {

enum class ClassicalKind { Laguerre, Jacobi, Gegenbauer };

/// Laguerre(alpha), Jacobi(alpha, beta) or Gegenbauer(lambda = alpha).
template <class T>
struct ClassicalFamily {
    ClassicalKind kind;
    T alpha{};
    T beta{};

    static ClassicalFamily laguerre(T a) { return {ClassicalKind::Laguerre, a, T(0)}; }
    static ClassicalFamily jacobi(T a, T b) { return {ClassicalKind::Jacobi, a, b}; }
    static ClassicalFamily gegenbauer(T lambda) { return {ClassicalKind::Gegenbauer, lambda, T(0)}; }
};

namespace detail {

/// Explicit sum, valid for any alpha.
template <class T>
Polynomial<T> laguerre_unchecked(const T& alpha, int n) {
    std::vector<T> c(n + 1);
    for (int k = 0; k <= n; ++k) {
        T v = pochhammer(alpha + T(k + 1), n - k) / (factorial<T>(n - k) * factorial<T>(k));
        c[k] = (k % 2 ? -v : v);
    }
    return Polynomial<T>(std::move(c));
}

/// Sum over powers of (z-1)/2, valid for any alpha, beta.
template <class T>
Polynomial<T> jacobi_unchecked(const T& alpha, const T& beta, int n) {
    Polynomial<T> u = Polynomial<T>::linear(T(-1) / T(2), T(1) / T(2));
    Polynomial<T> acc, upow = Polynomial<T>::constant(T(1));
    for (int k = 0; k <= n; ++k) {
        T v = pochhammer(alpha + T(k + 1), n - k) * pochhammer(alpha + beta + T(n + 1), k) /
              (factorial<T>(k) * factorial<T>(n - k));
        acc += upow * v;
        upow = upow * u;
    }
    return acc;
}

template <class T>
Polynomial<T> gegenbauer_unchecked(const T& lambda, int n) {
    std::vector<T> c(n + 1, T(0));
    for (int k = 0; 2 * k <= n; ++k) {
        T v = pochhammer(lambda, n - k) / (factorial<T>(k) * factorial<T>(n - 2 * k));
        for (int j = 0; j < n - 2 * k; ++j) v *= T(2);
        c[n - 2 * k] = (k % 2 ? -v : v);
    }
    return Polynomial<T>(std::move(c));
}

}  // namespace detail

template <class T>
void validate(const ClassicalFamily<T>& f) {
    switch (f.kind) {
        case ClassicalKind::Laguerre:
            if (!(f.alpha > T(-1))) throw DomainError("Laguerre requires alpha > -1");
            break;
        case ClassicalKind::Jacobi:
            if (!(f.alpha > T(-1)) || !(f.beta > T(-1))) throw DomainError("Jacobi requires alpha, beta > -1");
            break;
        case ClassicalKind::Gegenbauer:
            if (!(f.alpha > T(-1) / T(2))) throw DomainError("Gegenbauer requires lambda > -1/2");
            break;
    }
}

/// Degree-n classical polynomial in the standard normalization.
template <class T>
Polynomial<T> classical_polynomial(const ClassicalFamily<T>& f, int n) {
    if (n < 0) throw DomainError("polynomial index must be >= 0");
    validate(f);
    switch (f.kind) {
        case ClassicalKind::Laguerre: return detail::laguerre_unchecked(f.alpha, n);
        case ClassicalKind::Jacobi: return detail::jacobi_unchecked(f.alpha, f.beta, n);
        case ClassicalKind::Gegenbauer: return detail::gegenbauer_unchecked(f.alpha, n);
    }
    return {};
}

template <class T>
T poly_eval(const Polynomial<T>& p, const T& z) {
    return p(z);
}

template <class T>
Polynomial<T> poly_derivative(const Polynomial<T>& p) {
    return p.derivative();
}

/// Gauss-Legendre weight on [a, b].
struct LegendreInterval {
    double a = -1.0;
    double b = 1.0;
};

using WeightId = std::variant<ClassicalFamily<double>, LegendreInterval>;

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    WeightId weight;
    int exactness_degree = 0;

    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

namespace detail {

struct MonicRecurrence {
    std::vector<double> a;  // diagonal a_0..a_{n-1}
    std::vector<double> b;  // b_1..b_{n-1} (squared off-diagonal)
    double mu0 = 0.0;
};

inline MonicRecurrence jacobi_recurrence(double al, double be, int n) {
    MonicRecurrence r;
    double s = al + be;
    r.a.resize(n);
    r.b.resize(n > 0 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            r.a[k] = (be - al) / (s + 2.0);
        } else {
            double t = 2.0 * k + s;
            r.a[k] = (be * be - al * al) / (t * (t + 2.0));
        }
    }
    for (int k = 1; k < n; ++k) {
        if (k == 1) {
            r.b[0] = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
        } else {
            double t = 2.0 * k + s;
            r.b[k - 1] = 4.0 * k * (k + al) * (k + be) * (k + s) / (t * t * (t + 1.0) * (t - 1.0));
        }
    }
    r.mu0 = std::exp((s + 1.0) * std::log(2.0) + log_gamma(al + 1.0) + log_gamma(be + 1.0) - log_gamma(s + 2.0));
    return r;
}

inline MonicRecurrence laguerre_recurrence(double al, int n) {
    MonicRecurrence r;
    r.a.resize(n);
    r.b.resize(n > 0 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) r.a[k] = 2.0 * k + al + 1.0;
    for (int k = 1; k < n; ++k) r.b[k - 1] = k * (k + al);
    r.mu0 = std::exp(log_gamma(al + 1.0));
    return r;
}

/// 1 / sum_j p_j(x)^2 over the orthonormal polynomials; keeps relative accuracy for tiny weights,
/// unlike the squared first eigenvector component. Values are rescaled to stay inside double range.
inline double christoffel_weight(const MonicRecurrence& r, double x) {
    const int n = static_cast<int>(r.a.size());
    double prev = 0.0, cur = 1.0 / std::sqrt(r.mu0);
    double sum = cur * cur, log_scale = 0.0;  // true values are stored * exp(log_scale)
    for (int j = 0; j + 1 < n; ++j) {
        double next = (x - r.a[j]) * cur - (j > 0 ? std::sqrt(r.b[j - 1]) * prev : 0.0);
        next /= std::sqrt(r.b[j]);
        prev = cur;
        cur = next;
        sum += cur * cur;
        if (std::abs(cur) > 1e100) {
            prev *= 1e-100;
            cur *= 1e-100;
            sum *= 1e-200;
            log_scale += 100 * std::log(10.0);
        }
    }
    return std::exp(-std::log(sum) - 2 * log_scale);
}

inline void golub_welsch(const MonicRecurrence& r, std::vector<double>& x, std::vector<double>& w) {
    const int n = static_cast<int>(r.a.size());
    Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) diag[k] = r.a[k];
    for (int k = 0; k + 1 < n; ++k) sub[k] = std::sqrt(r.b[k]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NumericError("Jacobi matrix eigen-decomposition failed");
    x.resize(n);
    w.resize(n);
    for (int k = 0; k < n; ++k) {
        x[k] = es.eigenvalues()[k];
        w[k] = christoffel_weight(r, x[k]);
    }
}

}  // namespace detail

/// n-point Gauss rule for the weight of a classical family or for Legendre on [a, b]. Nodes ascending.
inline QuadratureRule gauss_rule(const WeightId& weight, int n) {
    if (n < 1) throw DomainError("gauss_rule needs n >= 1");
    QuadratureRule rule;
    rule.weight = weight;
    rule.exactness_degree = 2 * n - 1;
    if (const auto* f = std::get_if<ClassicalFamily<double>>(&weight)) {
        validate(*f);
        switch (f->kind) {
            case ClassicalKind::Laguerre:
                detail::golub_welsch(detail::laguerre_recurrence(f->alpha, n), rule.nodes, rule.weights);
                break;
            case ClassicalKind::Jacobi:
                detail::golub_welsch(detail::jacobi_recurrence(f->alpha, f->beta, n), rule.nodes, rule.weights);
                break;
            case ClassicalKind::Gegenbauer:
                detail::golub_welsch(detail::jacobi_recurrence(f->alpha - 0.5, f->alpha - 0.5, n), rule.nodes,
                                     rule.weights);
                break;
        }
    } else {
        const auto& iv = std::get<LegendreInterval>(weight);
        if (!(iv.a < iv.b)) throw DomainError("Legendre interval needs a < b");
        detail::golub_welsch(detail::jacobi_recurrence(0.0, 0.0, n), rule.nodes, rule.weights);
        double half = 0.5 * (iv.b - iv.a), mid = 0.5 * (iv.b + iv.a);
        for (int k = 0; k < n; ++k) {
            rule.nodes[k] = mid + half * rule.nodes[k];
            rule.weights[k] *= half;
        }
    }
    return rule;
}

}  // namespace ratext
