#ifndef FFH_POLY_HPP
#define FFH_POLY_HPP

// Dense univariate polynomials over an exact coefficient ring.
//
// Poly<Rational> (UniPoly) models Q[t]; Poly<Integer> (ZPoly) is the working
// representation for large computations, where products go through Kronecker
// substitution so that GMP's subquadratic integer multiplication does the work.

#include "ffh/arith.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace ffh {

template <class R>
class Poly;

using UniPoly = Poly<Rational>;
using ZPoly = Poly<Integer>;

namespace detail {
template <class R>
Poly<R> mul(const Poly<R>& a, const Poly<R>& b);
}

template <class R>
class Poly {
public:
    using coeff_type = R;

    Poly() = default;
    Poly(const R& c) {  // NOLINT(google-explicit-constructor): constants embed
        if (!ffh::is_zero(c)) c_.push_back(c);
    }
    Poly(int c) : Poly(R(c)) {}  // NOLINT(google-explicit-constructor)
    explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(const R& c, std::size_t n) {
        if (ffh::is_zero(c)) return {};
        std::vector<R> v(n + 1);
        v[n] = c;
        return Poly(std::move(v));
    }
    /// The indeterminate itself.
    static Poly var() { return monomial(R(1), 1); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    /// Degree of the polynomial; std::nullopt for the zero polynomial.
    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }
    /// Number of stored coefficients (degree + 1, or 0 for zero).
    std::size_t size() const { return c_.size(); }
    const R& lead() const { return c_.back(); }
    R coeff(std::size_t i) const { return i < c_.size() ? c_[i] : R(); }
    const std::vector<R>& coeffs() const { return c_; }

    template <class T>
    T eval(const T& x) const {
        T acc{};
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + T(c_[i]);
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<R> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * R(static_cast<long>(i));
        return Poly(std::move(v));
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = detail::mul(*this, o); }
    Poly& operator*=(const R& s) {
        if (ffh::is_zero(s)) {
            c_.clear();
            return *this;
        }
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) { return detail::mul(a, b); }
    friend Poly operator*(Poly a, const R& s) { return a *= s; }
    friend Poly operator*(const R& s, Poly a) { return a *= s; }
    friend Poly operator-(Poly a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Shift by t^n.
    Poly shifted(std::size_t n) const {
        if (is_zero() || n == 0) return *this;
        std::vector<R> v(n + c_.size());
        std::copy(c_.begin(), c_.end(), v.begin() + static_cast<std::ptrdiff_t>(n));
        return Poly(std::move(v));
    }

    std::vector<R>& mutable_coeffs() { return c_; }
    void trim() {
        while (!c_.empty() && ffh::is_zero(c_.back())) c_.pop_back();
    }

private:
    std::vector<R> c_;
};

template <class R>
bool is_zero(const Poly<R>& p) {
    return p.is_zero();
}

// ---------------------------------------------------------------------------
// Multiplication

namespace detail {

inline constexpr std::size_t kKroneckerThreshold = 12;
inline constexpr std::size_t kLimbBits = sizeof(mp_limb_t) * 8;

inline std::size_t max_abs_bits(const std::vector<Integer>& v) {
    std::size_t m = 0;
    for (const auto& x : v) m = std::max(m, bit_length(x));
    return m;
}

// Writes sum_i c_i 2^(slot*i) into out, where slot = slot_limbs limbs. Each
// |c_i| must fit in slot - 1 bits.
inline void kronecker_pack(const std::vector<Integer>& c, std::size_t slot_limbs, Integer& out) {
    const std::size_t total = c.size() * slot_limbs;
    Integer pos, neg;
    mp_limb_t* pp = mpz_limbs_write(pos.get_mpz_t(), static_cast<mp_size_t>(total));
    mp_limb_t* np = mpz_limbs_write(neg.get_mpz_t(), static_cast<mp_size_t>(total));
    std::memset(pp, 0, total * sizeof(mp_limb_t));
    std::memset(np, 0, total * sizeof(mp_limb_t));
    for (std::size_t i = 0; i < c.size(); ++i) {
        int s = sgn(c[i]);
        if (s == 0) continue;
        std::size_t count = 0;
        mpz_export((s > 0 ? pp : np) + i * slot_limbs, &count, -1, sizeof(mp_limb_t), 0, 0,
                   c[i].get_mpz_t());
    }
    mpz_limbs_finish(pos.get_mpz_t(), static_cast<mp_size_t>(total));
    mpz_limbs_finish(neg.get_mpz_t(), static_cast<mp_size_t>(total));
    mpz_sub(out.get_mpz_t(), pos.get_mpz_t(), neg.get_mpz_t());
}

// Inverse of kronecker_pack for balanced digits in (-2^(B-1), 2^(B-1)).
inline std::vector<Integer> kronecker_unpack(const Integer& w, std::size_t n, std::size_t slot_limbs) {
    std::vector<Integer> out(n);
    const int s = sgn(w);
    if (s == 0) return out;
    const std::size_t bits = slot_limbs * kLimbBits;
    const mp_limb_t* limbs = mpz_limbs_read(w.get_mpz_t());
    const std::size_t wl = mpz_size(w.get_mpz_t());
    Integer full;
    mpz_setbit(full.get_mpz_t(), bits);
    bool borrow = false;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t off = i * slot_limbs;
        Integer& r = out[i];
        if (off < wl) {
            mpz_t view;
            mpz_roinit_n(view, limbs + off, static_cast<mp_size_t>(std::min(slot_limbs, wl - off)));
            mpz_set(r.get_mpz_t(), view);
        }
        if (borrow) r += 1;
        if (sgn(r) > 0 && mpz_sizeinbase(r.get_mpz_t(), 2) >= bits) {
            r -= full;
            borrow = true;
        } else {
            borrow = false;
        }
        if (s < 0) r = -r;
    }
    return out;
}

inline ZPoly kronecker_mul(const ZPoly& a, const ZPoly& b) {
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    const std::size_t shortest = std::min(ca.size(), cb.size());
    std::size_t bound = max_abs_bits(ca) + max_abs_bits(cb) +
                        static_cast<std::size_t>(std::bit_width(shortest)) + 2;
    std::size_t slot_limbs = (bound + kLimbBits - 1) / kLimbBits;
    Integer va, vb, w;
    kronecker_pack(ca, slot_limbs, va);
    if (&a == &b || ca == cb) {
        mpz_mul(w.get_mpz_t(), va.get_mpz_t(), va.get_mpz_t());
    } else {
        kronecker_pack(cb, slot_limbs, vb);
        mpz_mul(w.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
    }
    return ZPoly(kronecker_unpack(w, ca.size() + cb.size() - 1, slot_limbs));
}

inline ZPoly schoolbook_mul(const ZPoly& a, const ZPoly& b) {
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    std::vector<Integer> c(ca.size() + cb.size() - 1);
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ffh::is_zero(ca[i])) continue;
        for (std::size_t j = 0; j < cb.size(); ++j)
            mpz_addmul(c[i + j].get_mpz_t(), ca[i].get_mpz_t(), cb[j].get_mpz_t());
    }
    return ZPoly(std::move(c));
}

inline Integer denominator_lcm(const UniPoly& p) {
    Integer l = 1;
    for (const auto& x : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

// p * l as an integer polynomial, where l is a multiple of every denominator.
inline ZPoly scaled_to_integer(const UniPoly& p, const Integer& l) {
    std::vector<Integer> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& x = p.coeffs()[i];
        mpz_divexact(v[i].get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        v[i] *= x.get_num();
    }
    return ZPoly(std::move(v));
}

template <class R>
Poly<R> mul(const Poly<R>& a, const Poly<R>& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if constexpr (std::is_same_v<R, Integer>) {
        if (std::min(a.size(), b.size()) >= kKroneckerThreshold) return kronecker_mul(a, b);
        return schoolbook_mul(a, b);
    } else if constexpr (std::is_same_v<R, Rational>) {
        if (std::min(a.size(), b.size()) >= kKroneckerThreshold) {
            Integer la = denominator_lcm(a), lb = denominator_lcm(b);
            ZPoly prod = kronecker_mul(scaled_to_integer(a, la), scaled_to_integer(b, lb));
            Integer den = la * lb;
            std::vector<Rational> v(prod.size());
            for (std::size_t i = 0; i < prod.size(); ++i) {
                v[i] = Rational(prod.coeffs()[i], den);
                v[i].canonicalize();
            }
            return Poly<R>(std::move(v));
        }
    }
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    std::vector<R> c(ca.size() + cb.size() - 1);
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ffh::is_zero(ca[i])) continue;
        for (std::size_t j = 0; j < cb.size(); ++j) c[i + j] += ca[i] * cb[j];
    }
    return Poly<R>(std::move(c));
}

}  // namespace detail

template <class R>
Poly<R> pow(const Poly<R>& base, unsigned e) {
    Poly<R> result(R(1));
    Poly<R> b = base;
    while (e) {
        if (e & 1u) result *= b;
        e >>= 1u;
        if (e) b = b * b;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Conversions

inline UniPoly to_unipoly(const ZPoly& p) {
    std::vector<Rational> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = Rational(p.coeffs()[i]);
    return UniPoly(std::move(v));
}

/// The same polynomial over Z; throws if a coefficient is not an integer.
inline ZPoly to_zpoly_exact(const UniPoly& p) {
    std::vector<Integer> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.coeffs()[i].get_den() != 1) throw Error(Errc::Internal, "non-integer coefficient");
        v[i] = p.coeffs()[i].get_num();
    }
    return ZPoly(std::move(v));
}

/// Integer content (nonnegative gcd of the coefficients); 0 for the zero polynomial.
inline Integer content(const ZPoly& p) {
    Integer g = 0;
    for (const auto& x : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

/// Primitive part with positive leading coefficient.
inline ZPoly primitive_part(ZPoly p) {
    if (p.is_zero()) return p;
    Integer g = content(p);
    if (sgn(p.lead()) < 0) g = -g;
    if (g != 1)
        for (auto& x : p.mutable_coeffs()) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return p;
}

/// p = scale * result, result primitive in Z[t] with positive leading coefficient.
inline ZPoly primitive_integer(const UniPoly& p, Rational* scale = nullptr) {
    if (p.is_zero()) {
        if (scale) *scale = 0;
        return {};
    }
    Integer l = detail::denominator_lcm(p);
    ZPoly z = detail::scaled_to_integer(p, l);
    Integer g = content(z);
    if (sgn(z.lead()) < 0) g = -g;
    for (auto& x : z.mutable_coeffs()) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    if (scale) {
        *scale = Rational(g, l);
        scale->canonicalize();
    }
    return z;
}

inline UniPoly monic(const UniPoly& p) {
    if (p.is_zero()) return p;
    Rational inv = 1 / p.lead();
    return p * inv;
}

// ---------------------------------------------------------------------------
// Division

/// Euclidean division over a field: a = q*b + r with deg r < deg b.
template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b) {
    if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
    if (a.is_zero() || a.size() < b.size()) return {Poly<R>(), a};
    std::vector<R> r = a.coeffs();
    const std::size_t nb = b.size();
    std::vector<R> q(r.size() - nb + 1);
    const R inv = R(1) / b.lead();
    for (std::size_t i = r.size(); i-- >= nb;) {
        if (ffh::is_zero(r[i])) continue;
        R f = r[i] * inv;
        const std::size_t shift = i - (nb - 1);
        q[shift] = f;
        for (std::size_t j = 0; j < nb; ++j) r[shift + j] -= f * b.coeffs()[j];
    }
    r.resize(nb - 1);
    return {Poly<R>(std::move(q)), Poly<R>(std::move(r))};
}

template <class R>
Poly<R> rem(const Poly<R>& a, const Poly<R>& b) {
    return divmod(a, b).second;
}

inline ZPoly primitive_integer(const UniPoly& p, Rational* scale);

/// Remainder over Q computed by fraction-free division in Z[t]: the reduction
/// steps multiply by lc(b) instead of normalizing a fraction per coefficient,
/// which matters when coefficients are large.
inline UniPoly rem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
    if (a.size() < b.size()) return a;
    if (b.size() == 1) return {};
    const Integer la = detail::denominator_lcm(a);
    std::vector<Integer> r = detail::scaled_to_integer(a, la).coeffs();
    const ZPoly bz = primitive_integer(b, nullptr);
    const std::size_t nb = bz.size();
    const Integer& lb = bz.lead();
    unsigned long steps = 0;
    Integer lr;
    for (std::size_t top = r.size(); top-- >= nb;) {
        if (ffh::is_zero(r[top])) continue;
        lr = r[top];
        const std::size_t shift = top - (nb - 1);
        for (std::size_t i = 0; i < top; ++i) r[i] *= lb;
        for (std::size_t j = 0; j + 1 < nb; ++j)
            mpz_submul(r[shift + j].get_mpz_t(), lr.get_mpz_t(), bz.coeffs()[j].get_mpz_t());
        ++steps;
    }
    r.resize(nb - 1);
    const Integer den = la * pow(lb, steps);
    std::vector<Rational> v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        v[i] = Rational(r[i], den);
        v[i].canonicalize();
    }
    return UniPoly(std::move(v));
}

/// Exact division in Z[t]; throws if b does not divide a.
inline ZPoly divexact(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
    if (a.is_zero()) return {};
    if (a.size() < b.size()) throw Error(Errc::Internal, "inexact polynomial division");
    std::vector<Integer> r = a.coeffs();
    const std::size_t nb = b.size();
    std::vector<Integer> q(r.size() - nb + 1);
    const Integer& lb = b.lead();
    for (std::size_t i = r.size(); i-- >= nb;) {
        if (ffh::is_zero(r[i])) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), lb.get_mpz_t()))
            throw Error(Errc::Internal, "inexact polynomial division");
        const std::size_t shift = i - (nb - 1);
        mpz_divexact(q[shift].get_mpz_t(), r[i].get_mpz_t(), lb.get_mpz_t());
        for (std::size_t j = 0; j < nb; ++j)
            mpz_submul(r[shift + j].get_mpz_t(), q[shift].get_mpz_t(), b.coeffs()[j].get_mpz_t());
    }
    for (std::size_t j = 0; j + 1 < nb; ++j)
        if (!ffh::is_zero(r[j])) throw Error(Errc::Internal, "inexact polynomial division");
    return ZPoly(std::move(q));
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed in Z[t].
inline ZPoly pseudo_rem(const ZPoly& a, const ZPoly& b) {
    std::vector<Integer> r = a.coeffs();
    const std::size_t nb = b.size();
    const Integer& lb = b.lead();
    while (r.size() >= nb) {
        Integer lr = r.back();
        const std::size_t shift = r.size() - nb;
        for (auto& x : r) x *= lb;
        for (std::size_t j = 0; j < nb; ++j)
            mpz_submul(r[shift + j].get_mpz_t(), lr.get_mpz_t(), b.coeffs()[j].get_mpz_t());
        r.pop_back();
        while (!r.empty() && ffh::is_zero(r.back())) r.pop_back();
    }
    return ZPoly(std::move(r));
}

// ---------------------------------------------------------------------------
// GCD

namespace detail {

inline constexpr std::uint64_t kGcdPrime = 0x1fffffffffffffffULL;  // 2^61 - 1

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::vector<std::uint64_t> reduce_mod(const ZPoly& a, std::uint64_t p) {
    std::vector<std::uint64_t> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = mpz_fdiv_ui(a.coeffs()[i].get_mpz_t(), p);
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

// Degree of gcd(a mod p, b mod p). Inputs nonzero mod p.
inline std::size_t gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                                  std::uint64_t p) {
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        const std::uint64_t inv = powmod(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            const std::uint64_t f = mulmod(a.back(), inv, p);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t s = mulmod(f, b[j], p);
                a[shift + j] = a[shift + j] >= s ? a[shift + j] - s : a[shift + j] + p - s;
            }
            while (!a.empty() && a.back() == 0) a.pop_back();
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a.size() - 1;
}

}  // namespace detail

/// GCD over Q[t] of two integer polynomials, returned primitive with positive
/// leading coefficient. gcd(0, 0) = 0.
inline ZPoly gcd_primitive(const ZPoly& a0, const ZPoly& b0) {
    if (a0.is_zero()) return primitive_part(b0);
    if (b0.is_zero()) return primitive_part(a0);
    if (a0.is_constant() || b0.is_constant()) return ZPoly(1);
    // A modular image with unchanged leading terms bounds the gcd degree from above.
    {
        const auto p = detail::kGcdPrime;
        if (mpz_fdiv_ui(a0.lead().get_mpz_t(), p) != 0 && mpz_fdiv_ui(b0.lead().get_mpz_t(), p) != 0 &&
            detail::gcd_degree_mod(detail::reduce_mod(a0, p), detail::reduce_mod(b0, p), p) == 0)
            return ZPoly(1);
    }
    ZPoly a = primitive_part(a0), b = primitive_part(b0);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.is_zero()) {
        if (b.is_constant()) return ZPoly(1);
        ZPoly r = pseudo_rem(a, b);
        a = std::move(b);
        b = primitive_part(std::move(r));
    }
    return primitive_part(std::move(a));
}

/// Monic greatest common divisor in Q[t]; gcd(0, 0) = 0.
inline UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    return monic(to_unipoly(gcd_primitive(primitive_integer(a), primitive_integer(b))));
}

struct ContentSplit {
    UniPoly gcd;                  // monic
    std::vector<UniPoly> parts;   // inputs divided by gcd
};

/// Monic gcd of all entries together with the cofactors; throws AllZero when
/// every entry vanishes.
inline ContentSplit content_and_primitive(std::span<const UniPoly> polys) {
    ZPoly g;
    for (const auto& p : polys) {
        if (p.is_zero()) continue;
        g = g.is_zero() ? primitive_integer(p) : gcd_primitive(g, primitive_integer(p));
    }
    if (g.is_zero()) throw Error(Errc::AllZero, "all entries are zero");
    ContentSplit out;
    out.gcd = monic(to_unipoly(g));
    out.parts.reserve(polys.size());
    for (const auto& p : polys) out.parts.push_back(divmod(p, out.gcd).first);
    return out;
}

// ---------------------------------------------------------------------------
// Formatting

namespace detail {
inline std::string var_power(std::string_view var, std::size_t e) {
    if (e == 0) return {};
    std::string s(var);
    if (e > 1) s += "^" + std::to_string(e);
    return s;
}
}  // namespace detail

/// Renders as a literal accepted by the parser, e.g. `3*t^2 - 1/2*t + 4`.
template <class R>
std::string to_string(const Poly<R>& p, std::string_view var = "t") {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t e = p.size(); e-- > 0;) {
        const R& c = p.coeffs()[e];
        if (ffh::is_zero(c)) continue;
        if constexpr (std::is_same_v<R, Integer> || std::is_same_v<R, Rational>) {
            const bool neg = sgn(c) < 0;
            if (first)
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            R a = neg ? R(-c) : c;
            if (e == 0) {
                out += to_string(a);
            } else {
                if (a != 1) out += to_string(a) + "*";
                out += detail::var_power(var, e);
            }
        } else {
            if (!first) out += " + ";
            out += "(" + to_string(c) + ")";
            if (e > 0) out += "*" + detail::var_power(var, e);
        }
        first = false;
    }
    return out;
}

}  // namespace ffh

#endif  // FFH_POLY_HPP
