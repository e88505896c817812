#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace ratext {

/**
 * Truncated Taylor series of order N: c[k] = f^(k)(x0) / k!.
 * Forward-mode AD giving exact derivatives up to order N of closed-form expressions.
 */
template <std::size_t N>
class Jet {
public:
    Jet() { c_.fill(0.0); }
    Jet(double v) {  // NOLINT: implicit lift of constants is intended
        c_.fill(0.0);
        c_[0] = v;
    }

    static Jet variable(double x0) {
        Jet j(x0);
        if constexpr (N >= 1) j.c_[1] = 1.0;
        return j;
    }

    double value() const { return c_[0]; }
    double coeff(std::size_t k) const { return c_[k]; }
    double& coeff(std::size_t k) { return c_[k]; }
    /// k-th derivative at the expansion point.
    double derivative(std::size_t k) const {
        double f = 1.0;
        for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
        return c_[k] * f;
    }

    /// d/dx of the series; the top coefficient is lost (set to zero).
    friend Jet d(const Jet& a) {
        Jet r;
        for (std::size_t k = 0; k < N; ++k) r.c_[k] = static_cast<double>(k + 1) * a.c_[k + 1];
        return r;
    }

    Jet operator-() const {
        Jet r;
        for (std::size_t k = 0; k <= N; ++k) r.c_[k] = -c_[k];
        return r;
    }
    Jet& operator+=(const Jet& o) {
        for (std::size_t k = 0; k <= N; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t k = 0; k <= N; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (std::size_t k = 0; k <= N; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
            r.c_[k] = s;
        }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet q;
        for (std::size_t k = 0; k <= N; ++k) {
            double s = a.c_[k];
            for (std::size_t j = 1; j <= k; ++j) s -= b.c_[j] * q.c_[k - j];
            q.c_[k] = s / b.c_[0];
        }
        return q;
    }

    friend Jet exp(const Jet& u) {
        Jet e;
        e.c_[0] = std::exp(u.c_[0]);
        for (std::size_t k = 1; k <= N; ++k) {
            double s = 0.0;
            for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * u.c_[j] * e.c_[k - j];
            e.c_[k] = s / static_cast<double>(k);
        }
        return e;
    }
    friend Jet log(const Jet& u) {
        Jet l;
        l.c_[0] = std::log(u.c_[0]);
        for (std::size_t k = 1; k <= N; ++k) {
            double s = 0.0;
            for (std::size_t j = 1; j < k; ++j) s += static_cast<double>(j) * l.c_[j] * u.c_[k - j];
            l.c_[k] = (u.c_[k] - s / static_cast<double>(k)) / u.c_[0];
        }
        return l;
    }
    /// u^r for u(x0) > 0.
    friend Jet pow(const Jet& u, double r) {
        Jet p;
        p.c_[0] = std::pow(u.c_[0], r);
        for (std::size_t k = 1; k <= N; ++k) {
            double s = 0.0;
            for (std::size_t j = 1; j <= k; ++j)
                s += (r * static_cast<double>(j) - static_cast<double>(k - j)) * u.c_[j] * p.c_[k - j];
            p.c_[k] = s / (static_cast<double>(k) * u.c_[0]);
        }
        return p;
    }
    friend Jet sqrt(const Jet& u) { return pow(u, 0.5); }
    friend Jet sin(const Jet& u) { return sincos(u).first; }
    friend Jet cos(const Jet& u) { return sincos(u).second; }
    friend Jet tan(const Jet& u) {
        auto [s, c] = sincos(u);
        return s / c;
    }
    friend Jet sec(const Jet& u) { return Jet(1.0) / cos(u); }

private:
    struct SinCos {
        Jet first, second;
    };
    static SinCos sincos(const Jet& u) {
        Jet s, c;
        s.c_[0] = std::sin(u.c_[0]);
        c.c_[0] = std::cos(u.c_[0]);
        for (std::size_t k = 1; k <= N; ++k) {
            double ss = 0.0, cc = 0.0;
            for (std::size_t j = 1; j <= k; ++j) {
                ss += static_cast<double>(j) * u.c_[j] * c.c_[k - j];
                cc += static_cast<double>(j) * u.c_[j] * s.c_[k - j];
            }
            s.c_[k] = ss / static_cast<double>(k);
            c.c_[k] = -cc / static_cast<double>(k);
        }
        return {s, c};
    }

    std::array<double, N + 1> c_;
};

using Jet4 = Jet<4>;

inline double sec(double x) { return 1.0 / std::cos(x); }
inline double value_of(double x) { return x; }
template <std::size_t N>
double value_of(const Jet<N>& j) {
    return j.value();
}

}  // namespace ratext
