#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace ratext {

namespace detail {
template <class U, class T>
U coeff_cast(const T& c) {
    if constexpr (std::is_same_v<U, T>) {
        return c;
    } else if constexpr (std::is_same_v<T, Rational>) {
        return U(c.template convert_to<double>());
    } else {
        return U(c);
    }
}
}  // namespace detail

/**
 * Dense univariate polynomial c0 + c1 z + ... + cn z^n.
 *
 * T is Rational for exact identity work or double at evaluation boundaries.
 * The zero polynomial is the empty coefficient vector and has degree -1.
 */
template <class T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> c) : c_(std::move(c)) { trim(); }
    Polynomial(std::initializer_list<T> c) : c_(c) { trim(); }

    static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
    static Polynomial monomial(int k, const T& v = T(1)) {
        std::vector<T> c(static_cast<std::size_t>(k) + 1, T(0));
        c.back() = v;
        return Polynomial(std::move(c));
    }
    /// a + b z
    static Polynomial linear(const T& a, const T& b) { return Polynomial({a, b}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T operator[](int k) const { return k >= 0 && k <= degree() ? c_[k] : T(0); }
    T leading() const { return is_zero() ? T(0) : c_.back(); }

    /// Horner evaluation; U may be double, Rational or an AD scalar.
    template <class U>
    U operator()(const U& z) const {
        U acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + detail::coeff_cast<U>(*it);
        return acc;
    }
    double operator()(double z) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + detail::coeff_cast<double>(*it);
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long>(k));
        return Polynomial(std::move(d));
    }

    /// p(a z + b)
    Polynomial compose_affine(const T& a, const T& b) const {
        Polynomial out;
        Polynomial lin = linear(b, a);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * lin + constant(*it);
        return out;
    }
    /// p(-z)
    Polynomial reflect() const {
        std::vector<T> c = c_;
        for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
        return Polynomial(std::move(c));
    }

    template <class U>
    Polynomial<U> cast() const {
        std::vector<U> c;
        c.reserve(c_.size());
        for (const auto& v : c_) c.push_back(detail::coeff_cast<U>(v));
        return Polynomial<U>(std::move(c));
    }

    Polynomial operator-() const {
        std::vector<T> c = c_;
        for (auto& v : c) v = -v;
        return Polynomial(std::move(c));
    }
    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) { return *this += -o; }
    Polynomial& operator*=(const T& s) {
        for (auto& v : c_) v *= s;
        trim();
        return *this;
    }
    Polynomial& operator/=(const T& s) {
        for (auto& v : c_) v /= s;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
    friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
    friend Polynomial operator/(Polynomial a, const T& s) { return a /= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// Euclidean division: returns (quotient, remainder).
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        std::vector<T> r = a.c_;
        int db = b.degree();
        std::vector<T> q(std::max(0, a.degree() - db + 1), T(0));
        for (int k = a.degree() - db; k >= 0; --k) {
            T f = r[k + db] / b.leading();
            q[k] = f;
            for (int j = 0; j <= db; ++j) r[k + j] -= f * b.c_[j];
            r[k + db] = T(0);
        }
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
    std::vector<T> c_;
};

using RPoly = Polynomial<Rational>;
using DPoly = Polynomial<double>;

namespace detail {
template <class T>
int sign_of(const T& v) {
    return v > T(0) ? 1 : (v < T(0) ? -1 : 0);
}
template <class T>
int sign_at(const Polynomial<T>& p, const std::optional<T>& x, int infinity_side) {
    if (x) return sign_of(p(*x));
    if (p.is_zero()) return 0;
    int s = sign_of(p.leading());
    return (infinity_side < 0 && p.degree() % 2 == 1) ? -s : s;
}
template <class T>
int variations(const std::vector<Polynomial<T>>& seq, const std::optional<T>& x, int side) {
    int count = 0, last = 0;
    for (const auto& p : seq) {
        int s = sign_at(p, x, side);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}
}  // namespace detail

/**
 * Number of distinct real roots in the open interval (lo, hi) by Sturm's theorem.
 * An empty bound means -infinity (lo) or +infinity (hi).
 */
template <class T>
int count_real_roots(const Polynomial<T>& p, std::optional<T> lo, std::optional<T> hi) {
    if (p.degree() <= 0) return 0;
    std::vector<Polynomial<T>> seq{p, p.derivative()};
    while (seq.back().degree() > 0) {
        auto r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    int n = detail::variations(seq, lo, -1) - detail::variations(seq, hi, +1);
    if (hi && p(*hi) == T(0)) --n;
    return n;
}

inline std::string to_string(const RPoly& p) {
    std::string s = "[";
    for (int k = 0; k <= p.degree(); ++k) s += (k ? ", " : "") + to_string(p[k]);
    return s + "]";
}

}  // namespace ratext
