#include "support.hpp"

#include <gtest/gtest.h>

namespace ffh {
namespace {

using testing::Gen;
using testing::T;

UniPoly P(const char* s) { return parse_unipoly(s); }

TEST(Rational, CanonicalForm) {
    Rational r(6, -4);
    r.canonicalize();
    EXPECT_EQ(r.get_num(), -3);
    EXPECT_EQ(r.get_den(), 2);
    Rational z(0, 7);
    z.canonicalize();
    EXPECT_EQ(z.get_den(), 1);
}

TEST(Rational, Decimal) {
    EXPECT_EQ(to_decimal(Rational(1, 3), 4), "0.3333");
    EXPECT_EQ(to_decimal(Rational(-1, 2), 2), "-0.50");
}

TEST(UniPoly, ZeroDegreeIsSentinel) {
    EXPECT_FALSE(UniPoly().degree().has_value());
    EXPECT_EQ(UniPoly(Rational(5)).degree(), 0u);
    EXPECT_EQ(P("t^3 - t").degree(), 3u);
}

TEST(UniPoly, LiteralSyntax) {
    const UniPoly p = P("3*t^2 - 1/2*t + 4");
    ASSERT_EQ(p.size(), 3u);
    EXPECT_EQ(p.coeffs()[0], 4);
    EXPECT_EQ(p.coeffs()[1], Rational(-1, 2));
    EXPECT_EQ(p.coeffs()[2], 3);
    EXPECT_EQ(P(to_string(p).c_str()), p);
}

TEST(PolyGcd, Examples) {
    EXPECT_EQ(poly_gcd(P("t^2 - 1"), P("t - 1")), P("t - 1"));
    EXPECT_EQ(poly_gcd(P("3*t^2 + 6"), UniPoly()), P("t^2 + 2"));
    EXPECT_EQ(poly_gcd(P("6*t + 6"), P("4*t + 4")), P("t + 1"));
    EXPECT_TRUE(poly_gcd(UniPoly(), UniPoly()).is_zero());
}

TEST(ContentAndPrimitive, Examples) {
    {
        const UniPoly p = P("t^2 + 1"), q = P("t - 3");
        const std::vector<UniPoly> in{T() * p, T() * q};
        const auto s = content_and_primitive(in);
        EXPECT_EQ(s.gcd, T());
        EXPECT_EQ(s.parts, (std::vector<UniPoly>{p, q}));
    }
    {
        const std::vector<UniPoly> in{P("t^2 + t"), P("t")};
        const auto s = content_and_primitive(in);
        EXPECT_EQ(s.gcd, T());
        EXPECT_EQ(s.parts, (std::vector<UniPoly>{P("t + 1"), UniPoly(Rational(1))}));
    }
    {
        const std::vector<UniPoly> in{P("3"), P("5*t")};
        const auto s = content_and_primitive(in);
        EXPECT_EQ(s.gcd, UniPoly(Rational(1)));
        EXPECT_EQ(s.parts, in);
    }
    const std::vector<UniPoly> zeros{UniPoly(), UniPoly()};
    try {
        content_and_primitive(zeros);
        FAIL() << "expected AllZero";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::AllZero);
    }
}

TEST(RfNormalize, Examples) {
    EXPECT_EQ(rf_normalize(P("t^2 - 1"), P("t - 1")), RationalFunc(P("t + 1")));
    const RationalFunc r = rf_normalize(P("2*t"), P("4"));
    EXPECT_EQ(r.num(), P("1/2*t"));
    EXPECT_EQ(r.den(), P("1"));
    const RationalFunc z = rf_normalize(UniPoly(), P("t + 7"));
    EXPECT_TRUE(z.num().is_zero());
    EXPECT_EQ(z.den(), P("1"));
    try {
        rf_normalize(P("t"), UniPoly());
        FAIL() << "expected DivisionByZero";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DivisionByZero);
    }
}

TEST(RfNormalize, DenominatorMonicAndCoprime) {
    const RationalFunc r = rf_normalize(P("4*t^2 - 4"), P("6*t^2 + 12*t + 6"));
    EXPECT_EQ(r.num(), P("2/3*t - 2/3"));
    EXPECT_EQ(r.den(), P("t + 1"));
}

TEST(RfEval, Examples) {
    EXPECT_EQ(rf_eval(RationalFunc(P("t + 1")), Rational(2)), 3);
    EXPECT_EQ(rf_eval(rf_normalize(P("t^2 + t"), P("t + 2")), Rational(1)), Rational(2, 3));
    try {
        rf_eval(rf_normalize(P("1"), P("t - 1")), Rational(1));
        FAIL() << "expected PoleAtParameter";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::PoleAtParameter);
    }
}

// Properties ----------------------------------------------------------------

TEST(ExactArithProperty, CanonicalFormUniqueness) {
    Gen g(101);
    for (int i = 0; i < 300; ++i) {
        const UniPoly a = g.unipoly(4, 9), b = g.nonzero_unipoly(4, 9), c = g.nonzero_unipoly(3, 9);
        const RationalFunc x = rf_normalize(a * c, b * c), y = rf_normalize(a, b);
        ASSERT_EQ(x, y) << to_string(a) << " / " << to_string(b) << " times " << to_string(c);
        if (!y.is_zero()) {
            ASSERT_EQ(y.den().lead(), 1);
            ASSERT_TRUE(poly_gcd(y.num(), y.den()).is_constant());
        }
    }
}

TEST(ExactArithProperty, EvaluationIsRingHomomorphism) {
    Gen g(102);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const RationalFunc x = g.ratfunc(3, 7), y = g.ratfunc(3, 7);
        const Rational t0 = g.rational(5);
        Rational ex, ey;
        try {
            ex = rf_eval(x, t0);
            ey = rf_eval(y, t0);
        } catch (const Error& e) {
            ASSERT_EQ(e.code(), Errc::PoleAtParameter);
            continue;
        }
        ASSERT_EQ(rf_eval(x * y, t0), ex * ey);
        ASSERT_EQ(rf_eval(x + y, t0), ex + ey);
        if (!is_zero(ey)) {
            ASSERT_EQ(rf_eval(x / y, t0), ex / ey);
        }
        ++checked;
    }
    EXPECT_GT(checked, 200);
}

TEST(ExactArithProperty, DegreeAdditivity) {
    Gen g(103);
    for (int i = 0; i < 500; ++i) {
        const UniPoly a = g.nonzero_unipoly(8, 20), b = g.nonzero_unipoly(8, 20);
        ASSERT_EQ(*(a * b).degree(), *a.degree() + *b.degree());
    }
}

TEST(ExactArithProperty, KroneckerMatchesSchoolbook) {
    Gen g(104);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = static_cast<std::size_t>(g.integer(10, 60));
        const long bound = g.coin() ? 3 : 1000000000L;
        ZPoly a = g.zpoly_exact(n, bound), b = g.zpoly_exact(static_cast<std::size_t>(g.integer(0, 60)), bound);
        if (g.coin(0.2)) a = a * Integer("123456789012345678901234567890");
        ASSERT_EQ(detail::kronecker_mul(a, b), detail::schoolbook_mul(a, b));
        ASSERT_EQ(detail::kronecker_mul(a, a), detail::schoolbook_mul(a, a));
    }
}

TEST(ExactArithProperty, GcdDividesAndCofactorsCoprime) {
    Gen g(105);
    for (int i = 0; i < 200; ++i) {
        const UniPoly c = g.nonzero_unipoly(3, 5);
        const UniPoly a = g.nonzero_unipoly(5, 9) * c, b = g.nonzero_unipoly(5, 9) * c;
        const UniPoly d = poly_gcd(a, b);
        ASSERT_EQ(d.lead(), 1);
        ASSERT_TRUE(rem(a, d).is_zero());
        ASSERT_TRUE(rem(b, d).is_zero());
        ASSERT_TRUE(rem(d, monic(c)).is_zero());
        ASSERT_TRUE(poly_gcd(divmod(a, d).first, divmod(b, d).first).is_constant());
    }
}

TEST(ExactArithProperty, DivisionIdentity) {
    Gen g(106);
    for (int i = 0; i < 200; ++i) {
        const UniPoly a = g.unipoly(9, 9), b = g.nonzero_unipoly(5, 9);
        const auto [q, r] = divmod(a, b);
        ASSERT_EQ(q * b + r, a);
        ASSERT_TRUE(r.is_zero() || *r.degree() < *b.degree());
    }
}

TEST(ExactArithProperty, FieldAxioms) {
    Gen g(107);
    for (int i = 0; i < 150; ++i) {
        const RationalFunc x = g.ratfunc(3, 5), y = g.ratfunc(3, 5), z = g.nonzero_ratfunc(3, 5);
        ASSERT_EQ((x + y) * z, x * z + y * z);
        ASSERT_EQ(x * z / z, x);
        ASSERT_EQ(x - x, RationalFunc());
    }
}

}  // namespace
}  // namespace ffh
