#ifndef FFH_HEIGHT_HPP
#define FFH_HEIGHT_HPP

// Certified enclosures of the canonical height and the stability classifier.
//
// With |h(f(y)) - d h(y)| <= C for all y, telescoping gives
//     |hhat(x) - h(f^n x) / d^n| <= C / (d^n (d - 1)),
// so every iterate yields an exact rational interval around hhat(x).

#include "ffh/endomorphism.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace ffh {

struct HeightInterval {
    Rational lo;
    Rational hi;
    std::size_t n_used = 0;
    std::size_t defect_used = 0;

    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool intersects(const HeightInterval& o) const { return lo <= o.hi && o.lo <= hi; }
    /// True when this interval lies inside `o`.
    bool within(const HeightInterval& o) const { return o.lo <= lo && hi <= o.hi; }
    Rational width() const { return hi - lo; }
    /// The image of the interval under multiplication by s >= 0.
    HeightInterval scaled(const Rational& s) const { return {lo * s, hi * s, n_used, defect_used}; }

    friend bool operator==(const HeightInterval&, const HeightInterval&) = default;
};

/// The interval determined by the naive height h of f^n(x).
inline HeightInterval height_interval(std::size_t h, std::size_t n, unsigned d, std::size_t c) {
    const Rational dn(pow(Integer(d), static_cast<unsigned long>(n)));
    const Rational center = Rational(Integer(h)) / dn;
    const Rational radius = Rational(Integer(c)) / (dn * Rational(d - 1));
    Rational lo = center - radius;
    if (sgn(lo) < 0) lo = 0;
    return {lo, center + radius, n, c};
}

// ---------------------------------------------------------------------------
// Heights without iterates
//
// deg f(x) = max_j deg F_j(x) - deg gcd_j F_j(x). The first term only needs the
// leading coefficients of x (a truncated series in 1/t); the gcd divides the
// eliminant R, so it only needs x modulo R. Iterating this needs x_0 modulo
// R^n and a few leading coefficients, whose sizes grow like d^n instead of the
// d^(2n) of the full coordinates.

namespace detail {

// Leading part of a polynomial p of degree deg: rev = sum_i p_(deg-i) s^i,
// known modulo s^prec. Exact parts hold every coefficient.
struct LeadingPart {
    bool zero = false;
    bool exact = false;
    std::size_t deg = 0;
    std::size_t prec = 0;
    UniPoly rev;
};

inline constexpr std::size_t kExactPrec = static_cast<std::size_t>(-1);

inline UniPoly truncated(const UniPoly& p, std::size_t n) {
    if (p.size() <= n) return p;
    return UniPoly(std::vector<Rational>(p.coeffs().begin(), p.coeffs().begin() + static_cast<std::ptrdiff_t>(n)));
}

inline UniPoly reversed(const UniPoly& p) { return UniPoly(std::vector<Rational>(p.coeffs().rbegin(), p.coeffs().rend())); }

inline LeadingPart leading_part(const UniPoly& p, std::size_t cap) {
    LeadingPart s;
    if (p.is_zero()) {
        s.zero = s.exact = true;
        return s;
    }
    s.deg = *p.degree();
    s.rev = reversed(p);
    s.exact = true;
    s.prec = s.deg + 1;
    if (s.prec > cap) {
        s.exact = false;
        s.prec = cap;
        s.rev = truncated(s.rev, cap);
    }
    return s;
}

// a / b modulo s^n, b(0) != 0.
inline UniPoly series_div(const UniPoly& a, const UniPoly& b, std::size_t n) {
    std::vector<Rational> q(n);
    const Rational inv = 1 / b.coeff(0);
    for (std::size_t i = 0; i < n; ++i) {
        Rational acc = a.coeff(i);
        for (std::size_t j = 1; j <= i && j < b.size(); ++j) acc -= b.coeffs()[j] * q[i - j];
        q[i] = acc * inv;
    }
    return UniPoly(std::move(q));
}

// Rescales polynomials by one common rational so they become primitive in Z[t].
inline void rescale_jointly(std::vector<UniPoly*> ps) {
    Integer l = 1, g = 0;
    for (auto* p : ps) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), denominator_lcm(*p).get_mpz_t());
    for (auto* p : ps)
        for (const auto& c : p->coeffs()) {
            Integer v = Rational(c * l).get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
    if (g == 0) return;
    Rational s(l, g);
    s.canonicalize();
    for (auto* p : ps) *p = *p * s;
}

}  // namespace detail

/// Exact naive heights h(f^m x) for m = 0..n computed from leading parts and
/// residues. Returns nullopt when cancellation exhausts the tracked precision.
inline std::optional<std::vector<std::size_t>> height_sketch(const Endomorphism& f, const ProjectivePoint& x,
                                                            std::size_t n, std::size_t cap = 24) {
    using detail::kExactPrec;
    using detail::LeadingPart;
    const std::size_t nv = f.k() + 1;

    std::vector<LeadingPart> top(nv);
    for (std::size_t l = 0; l < nv; ++l) top[l] = detail::leading_part(to_unipoly(x.coords()[l]), cap);

    const UniPoly r = monic(f.cofactors().multiplier);
    const bool track = !r.is_constant() && n > 0;
    UniPoly modulus;
    std::vector<UniPoly> res(nv);
    if (track) {
        modulus = pow(r, static_cast<unsigned>(n));
        for (std::size_t l = 0; l < nv; ++l) res[l] = rem(to_unipoly(x.coords()[l]), modulus);
    }

    auto height_of = [&] {
        std::size_t h = 0;
        for (const auto& s : top)
            if (!s.zero) h = std::max(h, s.deg);
        return h;
    };
    std::vector<std::size_t> heights{height_of()};

    for (std::size_t m = 0; m < n; ++m) {
        // Leading parts of G_j = F_j(x).
        std::vector<LeadingPart> g(nv);
        for (std::size_t j = 0; j < nv; ++j) {
            struct Term {
                std::size_t deg, prec;
                UniPoly ser;
            };
            std::vector<Term> terms;
            for (const auto& [e, c] : f.forms()[j].poly().terms()) {
                Term t{*c.degree(), kExactPrec, detail::reversed(c)};
                bool vanishes = false;
                for (std::size_t l = 0; l < nv && !vanishes; ++l) {
                    if (e[l] == 0) continue;
                    if (top[l].zero) {
                        vanishes = true;
                        break;
                    }
                    t.deg += e[l] * top[l].deg;
                    if (!top[l].exact) t.prec = std::min(t.prec, top[l].prec);
                    for (unsigned a = 0; a < e[l]; ++a) {
                        t.ser = t.ser * top[l].rev;
                        if (t.prec != kExactPrec) t.ser = detail::truncated(t.ser, t.prec);
                    }
                }
                if (!vanishes) terms.push_back(std::move(t));
            }
            LeadingPart& out = g[j];
            if (terms.empty()) {
                out.zero = out.exact = true;
                continue;
            }
            std::size_t top_deg = 0;
            for (const auto& t : terms) top_deg = std::max(top_deg, t.deg);
            std::size_t known = kExactPrec;
            UniPoly sum;
            for (const auto& t : terms) {
                const std::size_t shift = top_deg - t.deg;
                if (t.prec != kExactPrec) known = std::min(known, shift + t.prec);
                sum += t.ser.shifted(shift);
            }
            if (known != kExactPrec) sum = detail::truncated(sum, known);
            std::size_t lead = 0;
            while (lead < sum.size() && is_zero(sum.coeffs()[lead])) ++lead;
            if (lead == sum.size()) {
                if (known != kExactPrec) return std::nullopt;  // cannot tell zero from deep cancellation
                out.zero = out.exact = true;
                continue;
            }
            out.deg = top_deg - lead;
            out.rev = UniPoly(std::vector<Rational>(sum.coeffs().begin() + static_cast<std::ptrdiff_t>(lead),
                                                    sum.coeffs().end()));
            out.exact = known == kExactPrec;
            out.prec = out.exact ? out.deg + 1 : known - lead;
        }

        // Residues of G_j and their gcd with R.
        UniPoly gamma(Rational(1));
        std::vector<UniPoly> gres(nv);
        if (track) {
            std::vector<std::vector<UniPoly>> pw(nv);
            for (std::size_t l = 0; l < nv; ++l) {
                pw[l].push_back(UniPoly(Rational(1)));
                for (unsigned a = 1; a <= f.d(); ++a) pw[l].push_back(rem(pw[l].back() * res[l], modulus));
            }
            for (std::size_t j = 0; j < nv; ++j) {
                UniPoly acc;
                for (const auto& [e, c] : f.forms()[j].poly().terms()) {
                    UniPoly mono = c;
                    for (std::size_t l = 0; l < nv; ++l)
                        if (e[l] > 0) mono = rem(mono * pw[l][e[l]], modulus);
                    acc += mono;
                }
                gres[j] = std::move(acc);
            }
            gamma = r;
            for (std::size_t j = 0; j < nv && !gamma.is_constant(); ++j) gamma = poly_gcd(gamma, rem(gres[j], r));
            gamma = monic(gamma);
        }

        // x_(m+1) = G / gamma.
        const std::size_t gdeg = *gamma.degree();
        const UniPoly grev = detail::reversed(gamma);
        bool all_zero = true;
        for (std::size_t j = 0; j < nv; ++j) {
            LeadingPart next;
            if (g[j].zero) {
                next.zero = next.exact = true;
            } else {
                all_zero = false;
                if (g[j].deg < gdeg) throw Error(Errc::Internal, "height sketch: gcd exceeds coordinate degree");
                next.deg = g[j].deg - gdeg;
                next.exact = g[j].exact;
                next.prec = next.exact ? next.deg + 1 : g[j].prec;
                next.rev = gdeg == 0 ? detail::truncated(g[j].rev, next.prec)
                                     : detail::series_div(g[j].rev, grev, next.prec);
                if (next.exact && next.prec > cap) {
                    next.exact = false;
                    next.prec = cap;
                    next.rev = detail::truncated(next.rev, cap);
                }
            }
            top[j] = std::move(next);
        }
        if (all_zero) throw Error(Errc::Internal, "height sketch: image vanishes");

        std::vector<UniPoly*> tops;
        for (auto& s : top)
            if (!s.zero) tops.push_back(&s.rev);
        detail::rescale_jointly(tops);

        if (track && m + 1 < n) {
            modulus = divmod(modulus, gamma).first;
            std::vector<UniPoly*> rs;
            for (std::size_t j = 0; j < nv; ++j) {
                res[j] = rem(divmod(gres[j], gamma).first, modulus);
                rs.push_back(&res[j]);
            }
            detail::rescale_jointly(rs);
        }
        heights.push_back(height_of());
    }
    return heights;
}

/// h(f^m x) for m = 0..n.
inline std::vector<std::size_t> height_sequence(const Endomorphism& f, const ProjectivePoint& x, std::size_t n) {
    if (x.k() != f.k()) throw Error(Errc::DimensionMismatch, "point and map dimensions differ");
    if (auto s = height_sketch(f, x, n)) return std::move(*s);
    std::vector<std::size_t> out;
    ProjectivePoint y = x;
    for (std::size_t m = 0;; ++m) {
        out.push_back(naive_height(y));
        if (m == n) return out;
        y = evaluate(f, y);
    }
}

/// Memoized orbit of one point. Not thread-safe; use one cache per point.
class OrbitCache {
public:
    OrbitCache(const Endomorphism& f, ProjectivePoint x) : f_(&f), orbit_{std::move(x)} {
        // A constant-coefficient map keeps constant points constant, so their
        // heights are 0 at every iterate and nothing needs to be computed.
        stays_constant_ = f.coeff_height() == 0 && orbit_.front().is_constant();
    }

    const Endomorphism& map() const { return *f_; }
    const ProjectivePoint& point(std::size_t n) {
        while (orbit_.size() <= n) orbit_.push_back(evaluate(*f_, orbit_.back()));
        return orbit_[n];
    }
    /// h(f^n x); taken from already computed iterates when available, else
    /// from the sketch, else by iterating.
    std::size_t height(std::size_t n) {
        if (stays_constant_) return 0;
        if (n < orbit_.size()) return naive_height(orbit_[n]);
        if (n < heights_.size()) return heights_[n];
        if (!sketch_failed_) {
            // Cost grows about d^2-fold per step, so recomputing up to n each
            // time stays within a constant factor of the last run.
            if (auto s = height_sketch(*f_, orbit_.front(), n)) {
                heights_ = std::move(*s);
                return heights_[n];
            }
            sketch_failed_ = true;
        }
        return naive_height(point(n));
    }
    std::size_t computed() const { return orbit_.size(); }

private:
    const Endomorphism* f_;
    std::vector<ProjectivePoint> orbit_;
    std::vector<std::size_t> heights_;
    bool stays_constant_ = false;
    bool sketch_failed_ = false;
};

inline HeightInterval hhat_interval(OrbitCache& cache, std::size_t n) {
    const auto& f = cache.map();
    return height_interval(cache.height(n), n, f.d(), f.defect_bound());
}

/// Enclosure of hhat_f(x) from the n-th iterate.
inline HeightInterval hhat_interval(const Endomorphism& f, const ProjectivePoint& x, std::size_t n) {
    if (x.k() != f.k()) throw Error(Errc::DimensionMismatch, "point and map dimensions differ");
    OrbitCache cache(f, x);
    return hhat_interval(cache, n);
}

/// (I(x), I(f(x))) at the same iterate count; d * I(x) must meet I(f(x)).
inline std::pair<HeightInterval, HeightInterval> functional_gap_data(OrbitCache& cache, std::size_t n) {
    const auto& f = cache.map();
    return {hhat_interval(cache, n), height_interval(cache.height(n + 1), n, f.d(), f.defect_bound())};
}

inline std::pair<HeightInterval, HeightInterval> functional_gap_data(const Endomorphism& f,
                                                                     const ProjectivePoint& x, std::size_t n) {
    if (x.k() != f.k()) throw Error(Errc::DimensionMismatch, "point and map dimensions differ");
    OrbitCache cache(f, x);
    return functional_gap_data(cache, n);
}

// ---------------------------------------------------------------------------
// Classification

struct Preperiodic {
    std::size_t tail = 0;
    std::size_t period = 1;
    friend bool operator==(const Preperiodic&, const Preperiodic&) = default;
};

struct PositiveCertified {
    Rational lower;  // 0 < lower <= hhat(x)
    std::size_t witness_n = 0;
    friend bool operator==(const PositiveCertified&, const PositiveCertified&) = default;
};

struct Undecided {
    std::size_t n_max = 0;
    HeightInterval interval;
    /// Iterate at which the orbit was proved to grow forever in absolute
    /// value (so it is not preperiodic), when that happened.
    std::optional<std::size_t> escape_n;
    /// Set when iteration stopped early because the point outgrew the size limit.
    bool truncated = false;
    friend bool operator==(const Undecided&, const Undecided&) = default;
};

using Verdict = std::variant<Preperiodic, PositiveCertified, Undecided>;

inline std::string verdict_kind(const Verdict& v) {
    switch (v.index()) {
        case 0: return "preperiodic";
        case 1: return "positive_certified";
        default: return "undecided";
    }
}

struct ClassifyOptions {
    /// Stop with a truncated Undecided verdict once an iterate exceeds this many coefficient bits.
    std::size_t max_point_bits = std::size_t{1} << 28;
};

namespace detail {

// For a constant-coefficient map with escape constant A: a constant point
// whose largest |coordinate| H satisfies H^(d-1) > A has a strictly growing orbit.
inline bool escapes(const Endomorphism& f, const ProjectivePoint& x) {
    const auto& a = f.escape_constant();
    if (!a || !x.is_constant()) return false;
    Integer h = 0;
    for (const auto& c : x.coords())
        if (!c.is_zero() && abs(c.lead()) > h) h = abs(c.lead());
    return pow(h, f.d() - 1) > *a;
}

}  // namespace detail

/// Iterates up to `budget` steps. Preperiodic on the first exact revisit;
/// PositiveCertified at the first n with h(f^n x) > C/(d-1); Undecided otherwise.
inline Verdict classify(const Endomorphism& f, const ProjectivePoint& x, std::size_t budget,
                        const ClassifyOptions& opts = {}) {
    if (x.k() != f.k()) throw Error(Errc::DimensionMismatch, "point and map dimensions differ");
    const unsigned d = f.d();
    const std::size_t c = f.defect_bound();
    const Rational threshold = Rational(Integer(c)) / Rational(d - 1);

    std::unordered_map<ProjectivePoint, std::size_t, PointHash> seen;
    ProjectivePoint cur = x;
    seen.emplace(cur, 0);
    Rational dn = 1;
    for (std::size_t n = 0;; ++n) {
        const std::size_t h = naive_height(cur);
        if (Rational(Integer(h)) > threshold)
            return PositiveCertified{(Rational(Integer(h)) - threshold) / dn, n};
        if (detail::escapes(f, cur)) {
            // Heights stay 0 along a constant orbit of a constant map.
            return Undecided{budget, height_interval(0, budget, d, c), n, false};
        }
        if (n == budget) return Undecided{budget, height_interval(h, n, d, c), std::nullopt, false};
        if (cur.bit_size() > opts.max_point_bits)
            return Undecided{budget, height_interval(h, n, d, c), std::nullopt, true};

        cur = evaluate(f, cur);
        dn *= d;
        auto [it, fresh] = seen.emplace(cur, n + 1);
        if (!fresh) return Preperiodic{it->second, n + 1 - it->second};
    }
}

inline std::string to_string(const Verdict& v) {
    if (const auto* p = std::get_if<Preperiodic>(&v))
        return "Preperiodic {tail " + std::to_string(p->tail) + ", period " + std::to_string(p->period) + "}";
    if (const auto* p = std::get_if<PositiveCertified>(&v))
        return "PositiveCertified {lower " + to_string(p->lower) + ", witness_n " + std::to_string(p->witness_n) +
               "}";
    const auto& u = std::get<Undecided>(v);
    std::string s = "Undecided {budget " + std::to_string(u.n_max) + ", interval [" + to_string(u.interval.lo) +
                    ", " + to_string(u.interval.hi) + "] at n = " + std::to_string(u.interval.n_used);
    if (u.escape_n) s += ", orbit escapes from iterate " + std::to_string(*u.escape_n);
    if (u.truncated) s += ", truncated at size limit";
    return s + "}";
}

}  // namespace ffh

#endif  // FFH_HEIGHT_HPP
