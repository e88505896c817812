#pragma once

// Published low-degree polynomials, transcribed as functions of the parameters.

#include <functional>
#include <string>
#include <vector>

#include "ratext/xpoly.hpp"

namespace fixtures {

using ratext::Rational;
using ratext::RPoly;

struct LaguerreFixture {
    std::string name;
    ratext::ExceptionalKind kind;
    int nu;
    std::function<RPoly(const Rational&)> expected;
};

struct JacobiFixture {
    std::string name;
    ratext::ExceptionalKind kind;
    int nu;
    std::function<RPoly(const Rational&, const Rational&)> expected;
};

inline std::vector<LaguerreFixture> laguerre_fixtures() {
    using K = ratext::ExceptionalKind;
    const Rational h(1, 2);
    return {
        {"Lhat_1", K::X1Laguerre, 0, [](const Rational& a) { return RPoly{-a - 1, -1}; }},
        {"Lhat_2", K::X1Laguerre, 1, [](const Rational& a) { return RPoly{-a * (a + 2), 0, 1}; }},
        {"Lhat_3", K::X1Laguerre, 2,
         [h](const Rational& a) { return RPoly{-a * (a + 1) * (a + 3), a * (a + 3), a + 3, -1} * h; }},
        {"Ltilde_1,2", K::L1, 0, [](const Rational& a) { return RPoly{(a + 2) * (a + 1), 2 * (a + 2), 1}; }},
        {"Ltilde_1,3", K::L1, 1,
         [](const Rational& a) { return RPoly{a * (a + 1) * (a + 3), a * (a + 3), -(a + 3), -1}; }},
        {"Ltilde_1,4", K::L1, 2,
         [h](const Rational& a) {
             return RPoly{a * (a + 1) * (a + 1) * (a + 4), 0, -2 * (a + 1) * (a + 4), 0, 1} * h;
         }},
        {"Ltilde_2,2", K::L2, 0, [](const Rational& a) { return RPoly{a * (a + 1), 2 * a, 1}; }},
        {"Ltilde_2,3", K::L2, 1,
         [](const Rational& a) { return RPoly{(a + 2) * (a + 1) * (a - 1), (a + 2) * (a - 1), -(a - 1), -1}; }},
        {"Ltilde_2,4", K::L2, 2,
         [h](const Rational& a) {
             return RPoly{(a + 3) * (a + 2) * a * (a - 1), 0, -2 * (a + 3) * (a - 1), -4, 1} * h;
         }},
        {"Ltilde_3,3", K::L3, 0,
         [](const Rational& a) {
             return RPoly{(a + 1) * a * (a - 1), -3 * a * (a - 1), 3 * (a - 1), -1} * Rational(1, 3);
         }},
        {"Ltilde_3,4", K::L3, 1,
         [](const Rational& a) {
             return RPoly{(a + 2) * (a + 1) * a * (a - 1), -4 * (a + 2) * a * (a - 1), 2 * (a - 1) * (3 * a + 4),
                          -4 * a, 1} *
                    Rational(1, 4);
         }},
        {"Ltilde_3,5", K::L3, 2,
         [](const Rational& a) {
             return RPoly{(a + 3) * (a + 2) * (a + 1) * a * (a - 1),
                          -5 * (a + 3) * (a + 2) * a * (a - 1),
                          10 * (a + 3) * (a + 1) * (a - 1),
                          -10 * (a * a + 2 * a - 1),
                          5 * (a + 1),
                          -1} *
                    Rational(1, 10);
         }},
    };
}

/// Classical Laguerre entries of the same table.
inline std::vector<std::pair<int, std::function<RPoly(const Rational&)>>> classical_laguerre_fixtures() {
    return {
        {0, [](const Rational&) { return RPoly{1}; }},
        {1, [](const Rational& a) { return RPoly{a + 1, -1}; }},
        {2, [](const Rational& a) { return RPoly{(a + 2) * (a + 1), -2 * (a + 2), 1} * Rational(1, 2); }},
    };
}

inline std::vector<JacobiFixture> jacobi_fixtures() {
    using K = ratext::ExceptionalKind;
    return {
        {"Phat_1", K::X1Jacobi, 0,
         [](const Rational& a, const Rational& b) { return RPoly{b + a + 2, -(b - a)} / (2 * (b - a)); }},
        {"Phat_2", K::X1Jacobi, 1,
         [](const Rational& a, const Rational& b) {
             Rational d = b - a, s = b + a;
             return RPoly{-d * (s + 2), d * d + s * (s + 4), -d * (s + 2)} / (4 * d);
         }},
        {"Ptilde_1,2", K::P1, 0,
         [](const Rational& a, const Rational& b) {
             Rational d = b - a, s = b + a;
             return RPoly{(s + 2) * (s + 2) + d - 2, -2 * (d - 1) * (s + 2), (d - 1) * (d - 2)} /
                    (4 * (d - 1) * (d - 2));
         }},
        {"Ptilde_1,3", K::P1, 1,
         [](const Rational& a, const Rational& b) {
             Rational d = b - a, s = b + a;
             return RPoly{-d * (s + 2) * (s + 2) - (d - 4) * (d + 2),
                          (s + 2) * ((d - 2) * (2 * d + 3) + s * (s + 4)),
                          -(d - 1) * (d * (d - 2) + 2 * s * (s + 4)), (d - 1) * (d - 2) * (s + 2)} /
                    (8 * (d - 1) * (d - 2));
         }},
        {"Ptilde_3,3", K::P3, 0,
         [](const Rational& a, const Rational& b) {
             Rational d = b - a, s = b + a;
             return RPoly{d * (d * d + 3 * s - 4), -3 * s * (d * d + s - 2), 3 * s * (s - 1) * d,
                          -s * (s - 1) * (s - 2)} /
                    (8 * s * (s - 1) * (s - 2));
         }},
        {"Ptilde_3,4", K::P3, 1,
         [](const Rational& a, const Rational& b) {
             Rational d = b - a, s = b + a;
             return RPoly{-d * d * d * d - 2 * d * d * (s - 4) + (s - 2) * (s + 4),
                          4 * d * (s + 1) * (d * d + s - 2),
                          -2 * (s + 1) * (d * d * (3 * s + 2) + (s - 2) * (s + 4)),
                          4 * d * (s - 1) * (s + 1) * (s + 2),
                          -(s - 2) * (s - 1) * (s + 1) * (s + 4)} /
                    (16 * (s - 1) * (s - 2) * (s + 1));
         }},
    };
}

inline std::vector<std::pair<int, std::function<RPoly(const Rational&, const Rational&)>>>
classical_jacobi_fixtures() {
    return {
        {0, [](const Rational&, const Rational&) { return RPoly{1}; }},
        {1, [](const Rational& a, const Rational& b) { return RPoly{-(b - a), b + a + 2} / 2; }},
    };
}

/// Parameter samples avoiding the singular rescale points of every family.
inline std::vector<Rational> laguerre_alphas() {
    return {Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 2), Rational(2),
            Rational(5, 2), Rational(7, 3), Rational(3),    Rational(9, 2), Rational(11, 3)};
}

inline std::vector<Rational> jacobi_alphas() {
    return {Rational(0),    Rational(1, 2), Rational(1),    Rational(3, 2), Rational(2),
            Rational(1, 3), Rational(5, 2), Rational(3),    Rational(7, 2), Rational(-1, 2)};
}

inline std::vector<Rational> jacobi_betas() {
    return {Rational(1, 4), Rational(3, 4), Rational(5, 4), Rational(7, 4), Rational(9, 4),
            Rational(11, 4), Rational(13, 4), Rational(5, 3), Rational(7, 3), Rational(17, 4)};
}

}  // namespace fixtures
