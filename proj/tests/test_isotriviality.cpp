#include "support.hpp"

#include "ffh/report.hpp"

#include <gtest/gtest.h>

#include <complex>

namespace ffh {
namespace {

using testing::Gen;
using testing::make_map;
using testing::T;

ZtPoly zt(std::vector<UniPoly> c) { return ZtPoly{std::move(c)}; }
UniPoly q(long c) { return UniPoly(Rational(c)); }

MultiplierInvariants sigmas(const std::vector<std::string>& forms) { return multiplier_invariants(make_map(forms)); }

TEST(FixedPointData, Examples) {
    {
        const auto d = fixed_point_data(make_map({"X0^2", "X1^2"}));
        EXPECT_EQ(d.phi, zt({q(0), q(-1), q(1)}));
        EXPECT_TRUE(d.infinity_fixed);
    }
    {
        const auto d = fixed_point_data(make_map({"X0^2 + t*X1^2", "X1^2"}));
        EXPECT_EQ(d.phi, zt({T(), q(-1), q(1)}));
        EXPECT_TRUE(d.infinity_fixed);
        EXPECT_EQ(to_string(d.phi), "z^2 - z + t");
    }
    {
        // f(z) = 1/z^2: the fixed points are the cube roots of unity. Phi = P - zQ = 1 - z^3.
        const auto d = fixed_point_data(make_map({"X1^2", "X0^2"}));
        EXPECT_EQ(d.phi, zt({q(1), q(0), q(0), q(-1)}));
        EXPECT_FALSE(d.infinity_fixed);
    }
}

TEST(FixedPointData, FixedPointCount) {
    Gen g(501);
    for (int i = 0; i < 60; ++i) {
        const Endomorphism f = g.map(1, static_cast<unsigned>(g.integer(2, 4)), 2, 3);
        const auto d = fixed_point_data(f);
        ASSERT_TRUE(d.phi.degree().has_value());
        EXPECT_EQ(*d.phi.degree() + (d.infinity_fixed ? 1 : 0), f.d() + 1u);
    }
}

TEST(MultiplierInvariants, Examples) {
    {
        const auto s = sigmas({"X0^2", "X1^2"});  // multipliers 0, 0, 2
        EXPECT_EQ(s[1], RationalFunc(2));
        EXPECT_EQ(s[2], RationalFunc(0));
        EXPECT_EQ(s[3], RationalFunc(0));
    }
    {
        const auto s = sigmas({"X0^2 + t*X1^2", "X1^2"});
        EXPECT_EQ(s[1], RationalFunc(2));
        EXPECT_EQ(s[2], RationalFunc(q(4) * T()));
        EXPECT_EQ(s[3], RationalFunc(0));
    }
    {
        const auto s = sigmas({"X0^2 + X1^2", "X1^2"});
        EXPECT_EQ(s[1], RationalFunc(2));
        EXPECT_EQ(s[2], RationalFunc(4));
        EXPECT_EQ(s[3], RationalFunc(0));
    }
    {
        // M(z) = tz conjugates z^2 + 1 to z^2/t + t.
        const auto s = sigmas({"X0^2 + t^2*X1^2", "t*X1^2"});
        EXPECT_EQ(s, sigmas({"X0^2 + X1^2", "X1^2"}));
    }
    {
        // 1/z^2: each cube root of unity w has multiplier -2/w^3 = -2.
        const auto s = sigmas({"X1^2", "X0^2"});
        EXPECT_EQ(s[1], RationalFunc(-6));
        EXPECT_EQ(s[2], RationalFunc(12));
        EXPECT_EQ(s[3], RationalFunc(-8));
    }
    {
        // z^3: multipliers 0 (at 0), 0 (at infinity), 3 (at 1 and -1).
        const auto s = sigmas({"X0^3", "X1^3"});
        ASSERT_EQ(s.sigma.size(), 4u);
        EXPECT_EQ(s[1], RationalFunc(6));
        EXPECT_EQ(s[2], RationalFunc(9));
        EXPECT_EQ(s[3], RationalFunc(0));
        EXPECT_EQ(s[4], RationalFunc(0));
    }
}

TEST(IsotrivialityVerdict, Examples) {
    EXPECT_EQ(isotriviality_verdict(make_map({"X0^2 + X1^2", "X1^2"})), IsotrivialityVerdict(Isotrivial{}));
    EXPECT_EQ(isotriviality_verdict(make_map({"X0^2", "X1^2"})), IsotrivialityVerdict(Isotrivial{}));
    EXPECT_EQ(isotriviality_verdict(make_map({"X0^2 + t*X1^2", "X1^2"})),
              IsotrivialityVerdict((NonIsotrivial{2, RationalFunc(q(4) * T())})));
    EXPECT_EQ(isotriviality_verdict(make_map({"X0^2 + t^2*X1^2", "t*X1^2"})), IsotrivialityVerdict(Isotrivial{}));
}

TEST(IsotrivialityVerdict, HigherDegree) {
    const auto v = isotriviality_verdict(make_map({"X0^3 + t*X1^3", "X1^3"}));
    const auto* n = std::get_if<NonIsotrivial>(&v);
    ASSERT_NE(n, nullptr) << to_string(v);
    EXPECT_FALSE(n->value.is_constant());
    EXPECT_TRUE(std::holds_alternative<Inconclusive>(isotriviality_verdict(make_map({"X0^3 + X1^3", "X1^3"}))));
}

TEST(IsotrivialityVerdict, UnsupportedShape) {
    const Endomorphism f = make_map({"X0^2", "X1^2", "X2^2"});
    for (auto call : {+[](const Endomorphism& g) { (void)fixed_point_data(g); },
                      +[](const Endomorphism& g) { (void)multiplier_invariants(g); },
                      +[](const Endomorphism& g) { (void)isotriviality_verdict(g); }}) {
        try {
            call(f);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::UnsupportedShape);
        }
    }
}

TEST(IsotrivialityVerdict, JsonCarriesExactSigmas) {
    const Endomorphism f = make_map({"X0^2 + t*X1^2", "X1^2"});
    const auto data = fixed_point_data(f);
    const auto inv = multiplier_invariants(f);
    const Json j = isotriviality_json(data, inv, isotriviality_verdict(f, inv));
    EXPECT_EQ(j["sigma"], Json({"2", "4*t", "0"}));
    EXPECT_EQ(j["verdict"]["kind"], "nonisotrivial");
    EXPECT_EQ(j["verdict"]["witness"], "sigma2");
    EXPECT_EQ(j["verdict"]["value"], "4*t");
    EXPECT_EQ(j["fixed_points"]["phi"], "z^2 - z + t");
    EXPECT_EQ(j["fixed_points"]["multiplier"], "2*z");
    EXPECT_EQ(j["index_relation"], true);
}

// Properties ----------------------------------------------------------------

// Holomorphic index formula: with e_0 = 1, sum_k (-1)^k (d - k) e_k = 0 over the
// d+1 fixed-point multipliers. For d = 2 this reads sigma3 = sigma1 - 2.
RationalFunc index_defect(const MultiplierInvariants& s, unsigned d) {
    RationalFunc acc(static_cast<long>(d));
    for (std::size_t k = 1; k <= s.sigma.size(); ++k) {
        const RationalFunc term = RationalFunc(static_cast<long>(d) - static_cast<long>(k)) * s[k];
        acc = k % 2 ? acc - term : acc + term;
    }
    return acc;
}

TEST(IsotrivialityProperty, IndexRelationDegreeTwo) {
    Gen g(502);
    for (int i = 0; i < 100; ++i) {
        const Endomorphism f = g.map(1, 2, 2, 4);
        const auto s = multiplier_invariants(f);
        ASSERT_EQ(s.sigma.size(), 3u);
        ASSERT_EQ(s[3], s[1] - RationalFunc(2)) << to_string(f.forms()[0]) << ", " << to_string(f.forms()[1]);
    }
}

TEST(IsotrivialityProperty, IndexRelationHigherDegree) {
    Gen g(503);
    for (int i = 0; i < 30; ++i) {
        const unsigned d = static_cast<unsigned>(g.integer(3, 4));
        const Endomorphism f = g.map(1, d, 1, 3);
        const auto s = multiplier_invariants(f);
        ASSERT_EQ(s.sigma.size(), d + 1u);
        ASSERT_EQ(index_defect(s, d), RationalFunc(0));
    }
}

TEST(IsotrivialityProperty, ConjugationInvariance) {
    Gen g(504);
    for (int i = 0; i < 40; ++i) {
        const Endomorphism f = g.map(1, static_cast<unsigned>(g.integer(2, 3)), 1, 3);
        LinearChange M;
        do {
            M = mobius(g.unipoly(1, 3), g.unipoly(1, 3), g.unipoly(1, 3), g.unipoly(1, 3));
        } while (determinant(M).is_zero());
        const Endomorphism h = conjugate(f, M);
        ASSERT_EQ(multiplier_invariants(f), multiplier_invariants(h));
        ASSERT_EQ(isotriviality_verdict(f).index(), isotriviality_verdict(h).index());
    }
}

TEST(IsotrivialityProperty, ConstantMapsAreIsotrivial) {
    // Conjugating a t-free quadratic map by any Mobius map over Q(t) keeps it isotrivial.
    Gen g(505);
    for (int i = 0; i < 30; ++i) {
        const Endomorphism f = g.map(1, 2, 0, 4);
        ASSERT_EQ(isotriviality_verdict(f), IsotrivialityVerdict(Isotrivial{}));
        LinearChange M;
        do {
            M = mobius(g.unipoly(2, 3), g.unipoly(2, 3), g.unipoly(2, 3), g.unipoly(2, 3));
        } while (determinant(M).is_zero());
        ASSERT_EQ(isotriviality_verdict(conjugate(f, M)), IsotrivialityVerdict(Isotrivial{}));
    }
}

// Numerical oracle: specialize at an integer t0, find the fixed points with
// Durand-Kerner iteration and evaluate the multipliers directly.
using Cx = std::complex<long double>;

std::vector<Cx> roots(const std::vector<long double>& c) {  // c[i] multiplies z^i, c.back() != 0
    const std::size_t n = c.size() - 1;
    std::vector<Cx> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(Cx(0.4L, 0.9L), static_cast<long double>(i));
    auto eval = [&](Cx x) {
        Cx acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc / c.back();
    };
    for (int it = 0; it < 2000; ++it)
        for (std::size_t i = 0; i < n; ++i) {
            Cx den = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            z[i] -= eval(z[i]) / den;
        }
    return z;
}

std::optional<std::vector<long double>> numeric_sigmas(const Endomorphism& f, long t0) {
    const unsigned d = f.d();
    std::vector<Rational> p(d + 1), qq(d + 1);
    for (const auto& [e, c] : f.forms()[0].poly().terms()) p[e[0]] = c.eval(Rational(t0));
    for (const auto& [e, c] : f.forms()[1].poly().terms()) qq[e[0]] = c.eval(Rational(t0));
    if (testing::sylvester_resultant(p, qq) == 0) return std::nullopt;  // bad fiber
    std::vector<Rational> phi(d + 2);
    for (std::size_t i = 0; i <= d; ++i) {
        phi[i] += p[i];
        phi[i + 1] -= qq[i];
    }
    std::size_t top = d + 1;
    while (phi[top] == 0) --top;
    if (d + 1 - top > 1) return std::nullopt;  // parabolic point at infinity
    std::vector<long double> c;
    for (std::size_t i = 0; i <= top; ++i) c.push_back(static_cast<long double>(phi[i].get_d()));
    const auto z = roots(c);
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if (std::abs(z[i] - z[j]) < 1e-3L) return std::nullopt;  // near-multiple fixed point
    std::vector<Cx> lambda;
    for (const Cx& x : z) {
        Cx num = 0, den = 0, pw = 1;
        for (std::size_t i = 0; i <= d; ++i) {
            den += static_cast<long double>(qq[i].get_d()) * pw;
            pw *= x;
        }
        pw = 1;
        for (std::size_t i = 1; i <= d; ++i) {
            num += static_cast<long double>(i) * (static_cast<long double>(p[i].get_d()) - x * static_cast<long double>(qq[i].get_d())) * pw;
            pw *= x;
        }
        if (std::abs(den) < 1e-6L) return std::nullopt;
        lambda.push_back(num / den);
    }
    if (top == d) lambda.push_back(Cx(static_cast<long double>(Rational(qq[d - 1] / p[d]).get_d())));  // chart w = 1/z
    std::vector<Cx> e(lambda.size() + 1);
    e[0] = 1;
    for (const Cx& l : lambda)
        for (std::size_t k = lambda.size(); k >= 1; --k) e[k] += e[k - 1] * l;
    std::vector<long double> out;
    for (std::size_t k = 1; k < e.size(); ++k) {
        if (std::abs(e[k].imag()) > 1e-6L * (1 + std::abs(e[k]))) return std::nullopt;
        out.push_back(e[k].real());
    }
    return out;
}

TEST(IsotrivialityProperty, MatchesNumericalMultipliers) {
    Gen g(506);
    int compared = 0;
    for (int i = 0; i < 60; ++i) {
        const Endomorphism f = g.map(1, static_cast<unsigned>(g.integer(2, 3)), 1, 3);
        const auto s = multiplier_invariants(f);
        for (long t0 : {-2L, 1L, 3L}) {
            const auto num = numeric_sigmas(f, t0);
            if (!num) continue;
            bool pole = false;
            for (std::size_t k = 1; k <= s.sigma.size() && !pole; ++k) {
                Rational exact;
                try {
                    exact = rf_eval(s[k], Rational(t0));
                } catch (const Error&) {
                    pole = true;
                    break;
                }
                const long double x = exact.get_d();
                ASSERT_NEAR(static_cast<double>((*num)[k - 1]), static_cast<double>(x), 1e-6 * (1 + std::abs(static_cast<double>(x))))
                    << "sigma" << k << " at t = " << t0;
            }
            if (!pole) ++compared;
        }
    }
    EXPECT_GE(compared, 100);
}

}  // namespace
}  // namespace ffh
