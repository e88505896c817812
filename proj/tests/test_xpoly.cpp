#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ratext/xpoly.hpp"

using namespace ratext;

namespace {
using K = ExceptionalKind;

ExceptionalFamily<Rational> fam(K k, Rational a, Rational b = Rational(0)) { return {k, a, b}; }

bool singular_for(K k, const Rational& a, const Rational& b, int nu) {
    Rational d = b - a, s = a + b;
    switch (k) {
        case K::X1Jacobi: return d == 0 || b + nu == 0;
        case K::P1: return d == 1 || d == 2 || b + nu - 1 == 0;
        case K::P3: return s == 1 || s == 2 || s + nu == 0;
        default: return false;
    }
}

Rational two_pow(int n) {
    Rational r(1);
    for (int i = 0; i < n; ++i) r *= 2;
    return r;
}
}  // namespace

TEST(Operators, ExpandedForms) {
    Rational a(5, 3), b(7, 2);
    auto o1 = build_operator(OperatorKind::LaguerreHat1, a);
    EXPECT_EQ(o1.p, (RPoly{a, 1}));
    EXPECT_EQ(o1.q, (RPoly{-a - 1, -1}));
    auto o2 = build_operator(OperatorKind::LaguerreHat2, a);
    EXPECT_EQ(o2.p, (RPoly{0, a, 1}));
    EXPECT_EQ(o2.q, (RPoly{(a + 1) * a, a}));
    // Jacobi tilde1: p = D (1+z), q = (b+1) D - (1+z) D'
    Rational d = b - a, s = b + a;
    RPoly D = RPoly{s * s + b - a - 2, -2 * (d - 1) * s, (d - 1) * (d - 2)} * (d - 2);
    auto t1 = build_operator(OperatorKind::JacobiTilde1, a, std::optional<Rational>(b));
    EXPECT_EQ(t1.p, D * (RPoly{1, 1}));
    EXPECT_EQ(t1.q, D * (b + 1) - (RPoly{1, 1}) * D.derivative());
    EXPECT_THROW(build_operator(OperatorKind::JacobiHat1, a), UsageError);
    EXPECT_THROW(parse_operator_kind("no-such-op"), UsageError);
    EXPECT_EQ(parse_operator_kind("jacobi-tilde3"), OperatorKind::JacobiTilde3);
}

TEST(Operators, ApplicationBasics) {
    Rational a(3, 4);
    auto op = build_operator(OperatorKind::LaguerreHat1, a);
    EXPECT_EQ(apply_operator(op, RPoly{1}), (RPoly{-a - 1, -1}));
    EXPECT_TRUE(apply_operator(op, RPoly{}).is_zero());
    // Jacobi hat1 on P^(a-1,b+1)_0 = 1 gives 2(b-a) b Phat_1
    Rational b(5, 2);
    auto oj = build_operator(OperatorKind::JacobiHat1, a, std::optional<Rational>(b));
    auto phat1 = RPoly{b + a + 2, -(b - a)} / (2 * (b - a));
    EXPECT_EQ(apply_operator(oj, RPoly{1}), phat1 * (2 * (b - a) * b));
}

TEST(Operators, DegreeBound) {
    Rational a(3, 2), b(9, 4);
    for (auto k : {OperatorKind::LaguerreHat1, OperatorKind::LaguerreHat2, OperatorKind::LaguerreTilde1,
                   OperatorKind::LaguerreTilde2, OperatorKind::LaguerreTilde3, OperatorKind::JacobiHat1,
                   OperatorKind::JacobiHat2, OperatorKind::JacobiTilde1, OperatorKind::JacobiTilde2,
                   OperatorKind::JacobiTilde3}) {
        auto op = build_operator(k, a, std::optional<Rational>(b));
        int bound_extra = std::max(op.p.degree(), op.q.degree() + 1);
        for (int dgr = 1; dgr < 6; ++dgr) {
            auto f = classical_polynomial(ClassicalFamily<Rational>::laguerre(a), dgr);
            EXPECT_LE(apply_operator(op, f).degree(), dgr - 1 + bound_extra);
        }
    }
}

TEST(Exceptional, LowestMembers) {
    Rational a(7, 5);
    EXPECT_EQ(exceptional_polynomial(fam(K::X1Laguerre, a), 0), (RPoly{-a - 1, -1}));
    EXPECT_EQ(exceptional_polynomial(fam(K::L1, a), 0), (RPoly{(a + 2) * (a + 1), 2 * (a + 2), 1}));
    EXPECT_EQ(exceptional_polynomial(fam(K::L2, a), 0), (RPoly{a * (a + 1), 2 * a, 1}));
    EXPECT_EQ(exceptional_polynomial(fam(K::L3, Rational(1)), 0), (RPoly{0, 0, 0, Rational(-1, 3)}));
    EXPECT_EQ(exceptional_polynomial(fam(K::X1Jacobi, Rational(1), Rational(3)), 0), (RPoly{6, -2}) / 4);
}

TEST(Exceptional, LaguerreFixtures) {
    for (const auto& f : fixtures::laguerre_fixtures())
        for (const auto& a : fixtures::laguerre_alphas())
            EXPECT_EQ(exceptional_polynomial(fam(f.kind, a), f.nu), f.expected(a))
                << f.name << " alpha=" << to_string(a);
}

TEST(Exceptional, JacobiFixtures) {
    for (const auto& f : fixtures::jacobi_fixtures())
        for (const auto& a : fixtures::jacobi_alphas())
            for (const auto& b : fixtures::jacobi_betas()) {
                if (singular_for(f.kind, a, b, f.nu)) continue;
                EXPECT_EQ(exceptional_polynomial(fam(f.kind, a, b), f.nu), f.expected(a, b))
                    << f.name << " alpha=" << to_string(a) << " beta=" << to_string(b);
            }
}

TEST(Exceptional, DegreeAndLeadingCoefficients) {
    for (int nu = 0; nu <= 15; ++nu) {
        Rational a(5, 2), b(7, 3);
        Rational fact = factorial<Rational>(nu);
        Rational sgn = nu % 2 ? Rational(-1) : Rational(1);
        auto x1 = exceptional_polynomial(fam(K::X1Laguerre, a), nu);
        EXPECT_EQ(x1.degree(), nu + 1);
        EXPECT_EQ(x1.leading(), -sgn / fact);
        for (K k : {K::L1, K::L2}) {
            auto p = exceptional_polynomial(fam(k, a), nu);
            EXPECT_EQ(p.degree(), nu + 2);
            EXPECT_EQ(p.leading(), sgn / fact);
        }
        auto l3 = exceptional_polynomial(fam(K::L3, a), nu);
        EXPECT_EQ(l3.degree(), nu + 3);
        EXPECT_EQ(l3.leading(), -sgn / (Rational(nu + 3) * fact));

        Rational jb = binomial(Rational(2 * nu) + a + b, nu);
        auto xj = exceptional_polynomial(fam(K::X1Jacobi, a, b), nu);
        EXPECT_EQ(xj.degree(), nu + 1);
        EXPECT_EQ(xj.leading(), -jb / two_pow(nu + 1));
        auto p1 = exceptional_polynomial(fam(K::P1, a, b), nu);
        EXPECT_EQ(p1.degree(), nu + 2);
        EXPECT_EQ(p1.leading(), jb / two_pow(nu + 2));
        auto p3 = exceptional_polynomial(fam(K::P3, a, b), nu);
        EXPECT_EQ(p3.degree(), nu + 3);
        EXPECT_EQ(p3.leading(), -binomial(Rational(2 * nu + 2) + a + b, nu) / two_pow(nu + 3));
    }
}

TEST(Exceptional, SingularAndRangeErrors) {
    EXPECT_THROW(exceptional_polynomial(fam(K::X1Jacobi, Rational(2), Rational(2)), 1), SingularParameterError);
    EXPECT_THROW(exceptional_polynomial(fam(K::X1Jacobi, Rational(1), Rational(0)), 0), SingularParameterError);
    EXPECT_THROW(exceptional_polynomial(fam(K::L2, Rational(1)), 0), SingularParameterError);
    EXPECT_THROW(exceptional_polynomial(fam(K::P1, Rational(0), Rational(1)), 0), SingularParameterError);
    EXPECT_THROW(exceptional_polynomial(fam(K::L1, Rational(0)), 0), DomainError);
    EXPECT_THROW(exceptional_polynomial(fam(K::X1Laguerre, Rational(-1)), 0), DomainError);
    EXPECT_THROW(exceptional_polynomial(fam(K::P3, Rational(-2), Rational(1)), 0), DomainError);
    EXPECT_THROW(exceptional_polynomial(fam(K::L1, Rational(1)), -1), DomainError);
    EXPECT_NO_THROW(exceptional_polynomial(fam(K::X1Laguerre, Rational(-1, 2)), 3));
}

TEST(Expansion, X1LaguerreExample) {
    Rational a(2, 3);
    int nu = 4;
    auto c = expansion_coefficients(fam(K::X1Laguerre, a), nu);
    EXPECT_EQ(c.at(nu + 1), Rational(nu + 1));
    EXPECT_EQ(c.at(nu), -2 * (Rational(nu + 1) + a));
    EXPECT_EQ(c.at(nu - 1), Rational(nu + 1) + a);
    EXPECT_EQ(c.size(), 3u);
}

TEST(Expansion, L3DropsTwoTerms) {
    for (const auto& a : fixtures::laguerre_alphas()) {
        for (int nu = 3; nu <= 10; ++nu) {
            auto f = fam(K::L3, a);
            auto c = expansion_coefficients(f, nu);
            EXPECT_EQ(c.at(nu - 2), Rational(0));
            EXPECT_EQ(c.at(nu - 3), Rational(0));
            // independent projection onto the classical basis agrees, including the vanishing entries
            auto proj = classical_decomposition(exceptional_polynomial(f, nu), f.classical());
            for (int k = 0; k <= nu + 3; ++k) {
                Rational expect = c.count(k) ? c.at(k) : Rational(0);
                ASSERT_EQ(proj.at(k), expect) << "k=" << k << " nu=" << nu;
            }
        }
    }
}

TEST(Expansion, SupportSizes) {
    Rational a(3, 2), b(11, 4);
    auto nonzero = [](const ExpansionCoefficients<Rational>& c) {
        int n = 0;
        for (const auto& [k, v] : c) n += v != 0;
        return n;
    };
    EXPECT_EQ(nonzero(expansion_coefficients(fam(K::X1Laguerre, a), 5)), 3);
    EXPECT_EQ(nonzero(expansion_coefficients(fam(K::X1Jacobi, a, b), 5)), 3);
    for (K k : {K::L1, K::L2, K::L3}) EXPECT_EQ(nonzero(expansion_coefficients(fam(k, a), 5)), 5);
    EXPECT_THROW(expansion_coefficients(fam(K::P1, a, b), 1), UnsupportedError);
    EXPECT_THROW(expansion_coefficients(fam(K::P3, a, b), 1), UnsupportedError);
}

TEST(Expansion, X1JacobiLowestMember) {
    Rational a(1, 2), b(9, 4);
    auto f = fam(K::X1Jacobi, a, b);
    auto c = expansion_coefficients(f, 0);
    EXPECT_EQ(expand(c, f.classical()), (RPoly{b + a + 2, -(b - a)}) / (2 * (b - a)));
}

TEST(Expansion, DefinitionMatchesExpansionAllFamilies) {
    for (K k : {K::X1Laguerre, K::L1, K::L2, K::L3}) {
        for (const auto& a : {Rational(1, 3), Rational(5, 2)}) {
            auto f = fam(k, a);
            for (int nu = 0; nu <= 8; ++nu)
                ASSERT_EQ(exceptional_polynomial(f, nu), expand(expansion_coefficients(f, nu), f.classical()));
        }
    }
    for (const auto& [a, b] : {std::pair{Rational(0), Rational(5, 4)}, std::pair{Rational(3, 2), Rational(1, 4)}}) {
        auto f = fam(K::X1Jacobi, a, b);
        for (int nu = 0; nu <= 8; ++nu)
            ASSERT_EQ(exceptional_polynomial(f, nu), expand(expansion_coefficients(f, nu), f.classical()));
    }
}

TEST(Mirror, SecondJacobiOperatorIsReflectedFirst) {
    for (const auto& [a, b] : {std::pair{Rational(1, 2), Rational(9, 2)}, std::pair{Rational(2), Rational(7, 3)},
                               std::pair{Rational(5, 4), Rational(1, 3)}}) {
        auto o2 = build_operator(OperatorKind::JacobiTilde2, a, std::optional<Rational>(b));
        auto o1m = build_operator(OperatorKind::JacobiTilde1, b, std::optional<Rational>(a));
        for (int nu = 0; nu <= 10; ++nu) {
            auto lhs = o2(detail::jacobi_unchecked(a + 1, b - 1, nu));
            auto rhs = o1m(detail::jacobi_unchecked(b - 1, a + 1, nu)).reflect();
            ASSERT_EQ(lhs, nu % 2 ? rhs : -rhs) << "nu=" << nu;
        }
    }
}

TEST(Mirror, SecondHatOperatorRescale) {
    Rational a(3, 2), b(7, 2);
    auto o2 = build_operator(OperatorKind::JacobiHat2, a, std::optional<Rational>(b));
    for (int nu = 0; nu <= 6; ++nu) {
        auto lhs = o2(detail::jacobi_unchecked(a + 1, b - 1, nu));
        auto phat = exceptional_polynomial(fam(K::X1Jacobi, a, b), nu);
        EXPECT_EQ(lhs, phat * (2 * (a - b) * (a + nu)));
    }
}

TEST(Mirror, SecondLaguerreHatRescale) {
    Rational a(4, 3);
    auto o2 = build_operator(OperatorKind::LaguerreHat2, a);
    for (int nu = 0; nu <= 6; ++nu)
        EXPECT_EQ(o2(detail::laguerre_unchecked(a + 1, nu)),
                  exceptional_polynomial(fam(K::X1Laguerre, a), nu) * (-(a + nu)));
}

TEST(Limits, BetaToAlphaMatchesGegenbauerForm) {
    EXPECT_EQ(limit_beta_to_alpha(0, Rational(1)), (RPoly{2}));
    for (const auto& a : {Rational(1), Rational(1, 2), Rational(7, 3), Rational(-1, 3)}) {
        for (int nu = 0; nu <= 8; ++nu) {
            // (alpha+nu+1) Gamma(2a+1) Gamma(a+nu) / (Gamma(a) Gamma(2a+nu+1)) = (alpha+nu+1) (a)_nu / (2a+1)_nu
            Rational coef = (a + nu + 1) * pochhammer(a, nu) / pochhammer(2 * a + 1, nu);
            auto C = classical_polynomial(ClassicalFamily<Rational>::gegenbauer(a + Rational(1, 2)), nu);
            ASSERT_EQ(limit_beta_to_alpha(nu, a), C * coef) << "nu=" << nu;
        }
    }
}

TEST(Limits, BetaToAlphaNumericFirstOrder) {
    Rational a(3, 2);
    int nu = 3;
    auto lim = limit_beta_to_alpha(nu, a);
    std::vector<double> errs;
    for (int k = 2; k <= 6; ++k) {
        Rational eps(1, static_cast<long>(std::pow(10, k)));
        auto p = exceptional_polynomial(fam(K::X1Jacobi, a, a + eps), nu) * eps - lim;
        double e = 0;
        for (int j = -4; j <= 4; ++j) e = std::max(e, std::abs(to_double(p(Rational(j, 4)))));
        errs.push_back(e);
    }
    for (std::size_t i = 1; i < errs.size(); ++i) EXPECT_NEAR(std::log10(errs[i - 1] / errs[i]), 1.0, 0.2);
}

TEST(Limits, AlphaToZero) {
    EXPECT_EQ(limit_alpha_to_zero(1, Rational(2)), -(RPoly{1, -2, 1}));
    for (const auto& b : {Rational(2), Rational(1, 2), Rational(7, 3), Rational(-1, 2)}) {
        for (int nu = 1; nu <= 8; ++nu) {
            auto lim = limit_alpha_to_zero(nu, b);
            // value of the rational family at alpha = 0 (denominators stay nonzero there)
            ASSERT_EQ(lim, exceptional_polynomial(fam(K::X1Jacobi, Rational(0), b), nu)) << "nu=" << nu;
            // double root at z = 1
            EXPECT_EQ(lim(Rational(1)), Rational(0));
            EXPECT_EQ(lim.derivative()(Rational(1)), Rational(0));
        }
    }
    EXPECT_THROW(limit_alpha_to_zero(0, Rational(2)), UnsupportedError);
    EXPECT_THROW(limit_alpha_to_zero(1, Rational(0)), DomainError);
}

TEST(Limits, AlphaToZeroNumericFirstOrder) {
    Rational b(5, 2);
    int nu = 2;
    auto lim = limit_alpha_to_zero(nu, b);
    std::vector<double> errs;
    for (int k = 2; k <= 6; ++k) {
        Rational eps(1, static_cast<long>(std::pow(10, k)));
        auto p = exceptional_polynomial(fam(K::X1Jacobi, eps, b), nu) - lim;
        double e = 0;
        for (int j = -4; j <= 4; ++j) e = std::max(e, std::abs(to_double(p(Rational(j, 4)))));
        errs.push_back(e);
    }
    for (std::size_t i = 1; i < errs.size(); ++i) EXPECT_NEAR(std::log10(errs[i - 1] / errs[i]), 1.0, 0.2);
}
