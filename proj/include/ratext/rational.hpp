#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace ratext {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// Parses "p", "p/q" or a plain decimal such as "-0.25" or "1e-3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw UsageError("empty rational literal");
    try {
        if (auto slash = s.find('/'); slash != std::string::npos) {
            BigInt num(s.substr(0, slash));
            BigInt den(s.substr(slash + 1));
            if (den == 0) throw UsageError("zero denominator in '" + s + "'");
            return Rational(num, den);
        }
        std::string mant = s;
        long exp10 = 0;
        if (auto e = s.find_first_of("eE"); e != std::string::npos) {
            mant = s.substr(0, e);
            exp10 = std::stol(s.substr(e + 1));
        }
        bool neg = false;
        if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
            neg = mant[0] == '-';
            mant.erase(0, 1);
        }
        std::string digits;
        long frac = 0;
        bool seen_dot = false;
        for (char c : mant) {
            if (c == '.') {
                if (seen_dot) throw UsageError("bad number '" + s + "'");
                seen_dot = true;
            } else if (c >= '0' && c <= '9') {
                digits += c;
                if (seen_dot) ++frac;
            } else {
                throw UsageError("bad number '" + s + "'");
            }
        }
        if (digits.empty()) throw UsageError("bad number '" + s + "'");
        Rational r{BigInt(digits)};
        long shift = exp10 - frac;
        BigInt ten = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(shift)));
        r = shift >= 0 ? r * ten : r / ten;
        return neg ? -r : r;
    } catch (const std::runtime_error&) {
        throw UsageError("bad number '" + s + "'");
    }
}

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
    auto n = boost::multiprecision::numerator(r);
    auto d = boost::multiprecision::denominator(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Exact conversion of a binary64 value.
inline Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
    int e = 0;
    double m = std::frexp(x, &e);
    BigInt mant(static_cast<long long>(std::ldexp(m, 53)));
    e -= 53;
    Rational r{mant};
    BigInt p = boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(std::abs(e)));
    return e >= 0 ? r * p : r / p;
}

/// True when T is the exact rational type.
template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

}  // namespace ratext
