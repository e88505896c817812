#include <gtest/gtest.h>

#include "ratext/polynomial.hpp"

using namespace ratext;

TEST(Rational, ParsesFractionsAndDecimals) {
    EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
    EXPECT_EQ(parse_rational("0.3"), Rational(3, 10));
    EXPECT_EQ(parse_rational("2"), Rational(2));
    EXPECT_EQ(parse_rational("1.5e2"), Rational(150));
    EXPECT_EQ(parse_rational("25e-2"), Rational(1, 4));
    EXPECT_THROW(parse_rational("1/0"), UsageError);
    EXPECT_THROW(parse_rational("abc"), UsageError);
    EXPECT_THROW(parse_rational(""), UsageError);
}

TEST(Rational, FormatsLowestTerms) {
    EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
    EXPECT_EQ(to_string(Rational(-4, 2)), "-2");
    EXPECT_EQ(exact_rational(0.375), Rational(3, 8));
}

TEST(Polynomial, ZeroIsEmptyWithDegreeMinusOne) {
    RPoly z;
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.degree(), -1);
    RPoly t{Rational(1), Rational(0), Rational(0)};
    EXPECT_EQ(t.degree(), 0);
    EXPECT_EQ((t - t).degree(), -1);
}

TEST(Polynomial, HornerEvaluation) {
    DPoly p{2.0, -1.0};
    EXPECT_DOUBLE_EQ(p(0.0), 2.0);
    EXPECT_DOUBLE_EQ(DPoly{1.0}(17.0), 1.0);
    EXPECT_DOUBLE_EQ((DPoly{0.0, 0.0, 1.0})(3.0), 9.0);
    RPoly q{Rational(1, 2), Rational(1, 3)};
    EXPECT_EQ(q(Rational(3)), Rational(3, 2));
}

TEST(Polynomial, Derivative) {
    EXPECT_TRUE(DPoly{5.0}.derivative().is_zero());
    EXPECT_EQ((RPoly{0, 0, 1}).derivative(), (RPoly{0, 2}));
    RPoly p{1, 2, 3, 4};
    EXPECT_EQ(p.derivative().degree(), p.degree() - 1);
}

TEST(Polynomial, ArithmeticAndComposition) {
    RPoly a{1, 1};
    RPoly b{-1, 1};
    EXPECT_EQ(a * b, (RPoly{-1, 0, 1}));
    EXPECT_EQ((a * b).reflect(), (RPoly{-1, 0, 1}));
    EXPECT_EQ(a.reflect(), (RPoly{1, -1}));
    // (2z+1)^2 composed from z^2
    EXPECT_EQ((RPoly{0, 0, 1}).compose_affine(Rational(2), Rational(1)), (RPoly{1, 4, 4}));
    auto [q, r] = divmod(RPoly{-1, 0, 1}, RPoly{1, 1});
    EXPECT_EQ(q, (RPoly{-1, 1}));
    EXPECT_TRUE(r.is_zero());
}

TEST(Polynomial, SturmRootCounting) {
    RPoly p = RPoly{-1, 1} * RPoly{-2, 1} * RPoly{3, 1};  // roots 1, 2, -3
    EXPECT_EQ(count_real_roots<Rational>(p, std::nullopt, std::nullopt), 3);
    EXPECT_EQ(count_real_roots<Rational>(p, Rational(0), std::nullopt), 2);
    EXPECT_EQ(count_real_roots<Rational>(p, Rational(-1), Rational(1)), 0);
    EXPECT_EQ(count_real_roots<Rational>(p, Rational(-1), Rational(3, 2)), 1);
    DPoly c{1.0, 0.0, 1.0};
    EXPECT_EQ(count_real_roots<double>(c, std::nullopt, std::nullopt), 0);
    DPoly dbl{1.0, -2.0, 1.0};
    EXPECT_EQ(count_real_roots<double>(dbl, 0.0, 2.0), 1);
}
