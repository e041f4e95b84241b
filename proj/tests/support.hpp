#ifndef FFH_TESTS_SUPPORT_HPP
#define FFH_TESTS_SUPPORT_HPP

// Generators with fixed seeds and independent reference implementations used
// as oracles. The oracles avoid the library's fast paths on purpose: rational
// arithmetic instead of integer Kronecker products, linear scans instead of
// hashing, Sylvester determinants instead of Macaulay quotients.

#include "ffh/ffh.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ffh::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1)); }

    Rational rational(long bound) {
        Rational r(integer(-bound, bound), integer(1, bound));
        r.canonicalize();
        return r;
    }
    Rational nonzero_rational(long bound) {
        for (;;) {
            Rational r = rational(bound);
            if (!is_zero(r)) return r;
        }
    }
    ZPoly zpoly(std::size_t max_deg, long bound) {
        std::vector<Integer> c(static_cast<std::size_t>(integer(0, static_cast<long>(max_deg))) + 1);
        for (auto& x : c) x = integer(-bound, bound);
        return ZPoly(std::move(c));
    }
    /// A polynomial of exactly the given degree.
    ZPoly zpoly_exact(std::size_t deg, long bound) {
        std::vector<Integer> c(deg + 1);
        for (auto& x : c) x = integer(-bound, bound);
        while (c.back() == 0) c.back() = integer(-bound, bound);
        return ZPoly(std::move(c));
    }
    UniPoly unipoly(std::size_t max_deg, long bound) {
        std::vector<Rational> c(static_cast<std::size_t>(integer(0, static_cast<long>(max_deg))) + 1);
        for (auto& x : c) x = rational(bound);
        return UniPoly(std::move(c));
    }
    UniPoly nonzero_unipoly(std::size_t max_deg, long bound) {
        for (;;) {
            UniPoly p = unipoly(max_deg, bound);
            if (!p.is_zero()) return p;
        }
    }
    RationalFunc ratfunc(std::size_t max_deg, long bound) {
        return RationalFunc::normalized(unipoly(max_deg, bound), nonzero_unipoly(max_deg, bound));
    }
    RationalFunc nonzero_ratfunc(std::size_t max_deg, long bound) {
        return RationalFunc::normalized(nonzero_unipoly(max_deg, bound), nonzero_unipoly(max_deg, bound));
    }

    /// A point whose coordinates have degree <= max_deg, with one of them of degree exactly h.
    ProjectivePoint point(std::size_t k, std::size_t h, long bound) {
        for (;;) {
            std::vector<ZPoly> c;
            const std::size_t top = index(k + 1);
            for (std::size_t l = 0; l <= k; ++l) c.push_back(l == top ? zpoly_exact(h, bound) : zpoly(h, bound));
            // Canonicalization may lower the height when the coordinates share a factor.
            ProjectivePoint p = ProjectivePoint::from_integer(std::move(c));
            if (naive_height(p) == h) return p;
        }
    }

    /// A random map with coefficients of t-degree <= tdeg; retries until it is a morphism.
    Endomorphism map(std::size_t k, unsigned d, std::size_t tdeg, long bound, double density = 0.7) {
        for (;;) {
            std::vector<HomogeneousForm> forms;
            bool zero_form = false;
            for (std::size_t j = 0; j <= k; ++j) {
                MPoly p(k + 1);
                for (const auto& e : monomials(k + 1, d))
                    if (coin(density)) p.add_term(e, to_unipoly(zpoly(tdeg, bound)));
                if (p.is_zero()) zero_form = true;
                forms.emplace_back(std::move(p), d);
            }
            if (zero_form) continue;
            try {
                return endo_build(std::move(forms));
            } catch (const Error& e) {
                if (e.code() != Errc::NotAMorphism) throw;
            }
        }
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline Endomorphism make_map(const std::vector<std::string>& forms) {
    std::vector<HomogeneousForm> fs;
    for (const auto& s : forms) fs.emplace_back(parse_mpoly(s, forms.size()));
    return endo_build(std::move(fs));
}

inline ProjectivePoint make_point(const std::vector<std::string>& coords) {
    std::vector<UniPoly> c;
    for (const auto& s : coords) c.push_back(parse_unipoly(s));
    return pp_normalize(std::span<const UniPoly>(c));
}

inline const UniPoly& T() {
    static const UniPoly t = UniPoly::var();
    return t;
}

// ---------------------------------------------------------------------------
// Oracles

/// Canonical coordinates computed over Q[t] with rational arithmetic only.
inline std::vector<UniPoly> oracle_canonical(std::vector<UniPoly> c) {
    UniPoly g;
    for (const auto& p : c) g = poly_gcd(g, p);
    for (auto& p : c)
        if (!p.is_zero()) p = divmod(p, g).first;
    Integer l = 1;
    for (const auto& p : c)
        for (const auto& x : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    Integer cont = 0;
    for (const auto& p : c)
        for (const auto& x : p.coeffs()) {
            Integer v = Rational(x * l).get_num();
            mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), v.get_mpz_t());
        }
    for (const auto& p : c)
        if (!p.is_zero()) {
            if (sgn(p.lead()) < 0) cont = -cont;
            break;
        }
    Rational s(l, cont);
    s.canonicalize();
    for (auto& p : c) p = p * s;
    return c;
}

inline std::vector<UniPoly> as_unipolys(const ProjectivePoint& x) {
    std::vector<UniPoly> out;
    for (const auto& p : x.coords()) out.push_back(to_unipoly(p));
    return out;
}

inline std::size_t oracle_height(const std::vector<UniPoly>& c) {
    std::size_t h = 0;
    for (const auto& p : c)
        if (auto d = p.degree()) h = std::max(h, *d);
    return h;
}

/// f(x) by schoolbook substitution over Q[t] followed by oracle_canonical.
inline std::vector<UniPoly> oracle_evaluate(const Endomorphism& f, const std::vector<UniPoly>& x) {
    std::vector<UniPoly> out;
    for (const auto& form : f.forms()) {
        UniPoly acc;
        for (const auto& [e, c] : form.poly().terms()) {
            std::vector<Rational> m = c.coeffs();
            for (std::size_t l = 0; l < e.size(); ++l)
                for (unsigned a = 0; a < e[l]; ++a) {
                    std::vector<Rational> next(m.empty() || x[l].is_zero() ? 0 : m.size() + x[l].size() - 1);
                    for (std::size_t i = 0; i < m.size(); ++i)
                        for (std::size_t j = 0; j < x[l].size(); ++j) next[i + j] += m[i] * x[l].coeffs()[j];
                    m = std::move(next);
                }
            acc += UniPoly(std::move(m));
        }
        out.push_back(std::move(acc));
    }
    return oracle_canonical(std::move(out));
}

/// Sylvester resultant of two binary forms of degree d, given by coefficient
/// vectors a[i] of X0^i X1^(d-i), normalized so that Res(X0^d, X1^d) = 1.
inline Rational sylvester_resultant(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    const std::size_t d = a.size() - 1;
    const std::size_t n = 2 * d;
    Matrix<Rational> m(n, n);
    // Rows: X0^r * A for r < d, X0^r * B for r < d, columns by power of X0 from high to low.
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t i = 0; i <= d; ++i) {
            m(r, n - 1 - (i + r)) = a[i];
            m(d + r, n - 1 - (i + r)) = b[i];
        }
    Matrix<Rational> ref(n, n);
    for (std::size_t r = 0; r < d; ++r) {
        ref(r, n - 1 - (d + r)) = 1;
        ref(d + r, n - 1 - r) = 1;
    }
    return determinant(m) / determinant(ref);
}

/// Height sequence and verdict by direct iteration: no hashing, no size
/// shortcuts, rational arithmetic throughout.
struct OracleVerdict {
    std::string kind;
    std::size_t tail = 0, period = 0;  // preperiodic
    Rational lower;                    // positive
    std::size_t witness_n = 0;
    Rational lo, hi;                   // undecided interval
};

inline OracleVerdict oracle_classify(const Endomorphism& f, const ProjectivePoint& x, std::size_t budget) {
    const unsigned d = f.d();
    const Rational c(Integer(f.defect_bound()));
    const Rational threshold = c / Rational(d - 1);
    std::vector<std::vector<UniPoly>> seen{as_unipolys(x)};
    Rational dn = 1;
    for (std::size_t n = 0;; ++n) {
        const Rational h(Integer(oracle_height(seen.back())));
        if (h > threshold) return {"positive_certified", 0, 0, (h - threshold) / dn, n, 0, 0};
        if (n == budget) {
            Rational lo = h / dn - c / (dn * (d - 1));
            if (lo < 0) lo = 0;
            return {"undecided", 0, 0, 0, 0, lo, h / dn + c / (dn * (d - 1))};
        }
        auto next = oracle_evaluate(f, seen.back());
        dn *= d;
        for (std::size_t m = 0; m < seen.size(); ++m)
            if (seen[m] == next) return {"preperiodic", m, n + 1 - m, 0, 0, 0, 0};
        seen.push_back(std::move(next));
    }
}

inline bool matches(const Verdict& v, const OracleVerdict& o) {
    if (verdict_kind(v) != o.kind) return false;
    if (const auto* p = std::get_if<Preperiodic>(&v)) return p->tail == o.tail && p->period == o.period;
    if (const auto* p = std::get_if<PositiveCertified>(&v)) return p->lower == o.lower && p->witness_n == o.witness_n;
    const auto& u = std::get<Undecided>(v);
    return u.interval.lo == o.lo && u.interval.hi == o.hi;
}

}  // namespace ffh::testing

#endif  // FFH_TESTS_SUPPORT_HPP
