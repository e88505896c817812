#pragma once

#include <cmath>

#include "errors.hpp"

namespace ratext {

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

/// Rising factorial (a)_n = a (a+1) ... (a+n-1).
template <class T>
T pochhammer(const T& a, int n) {
    T r(1);
    for (int k = 0; k < n; ++k) r *= a + T(k);
    return r;
}

template <class T>
T factorial(int n) {
    T r(1);
    for (int k = 2; k <= n; ++k) r *= T(k);
    return r;
}

/// Generalized binomial coefficient C(x, k) for integer k >= 0.
template <class T>
T binomial(const T& x, int k) {
    T r(1);
    for (int j = 0; j < k; ++j) r = r * (x - T(j)) / T(j + 1);
    return r;
}

}  // namespace ratext
