#ifndef FFH_PROJECTIVE_HPP
#define FFH_PROJECTIVE_HPP

// K-rational points of P^k over K = Q(t).
//
// A point is stored as its coprime polynomial coordinate tuple: integer
// coefficients with content 1, no common factor in Q[t], and a positive
// leading coefficient on the first nonzero coordinate. Two points are equal
// in P^k(Q(t)) iff their stored tuples are identical.

#include "ffh/ratfunc.hpp"

#include <cstdint>
#include <algorithm>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ffh {

class ProjectivePoint {
public:
    ProjectivePoint() = default;

    /// Dimension k of the ambient P^k.
    std::size_t k() const { return c_.size() - 1; }
    const std::vector<ZPoly>& coords() const { return c_; }
    bool is_constant() const {
        for (const auto& p : c_)
            if (!p.is_constant()) return false;
        return true;
    }
    /// Total number of coefficient bits, a proxy for memory footprint.
    std::size_t bit_size() const {
        std::size_t n = 0;
        for (const auto& p : c_)
            for (const auto& x : p.coeffs()) n += bit_length(x) + 1;
        return n;
    }

    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ProjectivePoint& a, const ProjectivePoint& b) { return !(a == b); }

    /// Canonicalizes an integer coordinate tuple; throws NotAPoint if all vanish.
    /// With `coprime` the caller guarantees there is no common factor in Q[t].
    static ProjectivePoint from_integer(std::vector<ZPoly> coords, bool coprime = false);

private:
    std::vector<ZPoly> c_;
};

inline ProjectivePoint ProjectivePoint::from_integer(std::vector<ZPoly> coords, bool coprime) {
    if (coords.size() < 2) throw Error(Errc::DimensionMismatch, "a point of P^k needs at least two coordinates");
    if (std::all_of(coords.begin(), coords.end(), [](const ZPoly& p) { return p.is_zero(); }))
        throw Error(Errc::NotAPoint, "all coordinates are zero");
    if (!coprime) {
        ZPoly g;
        for (const auto& p : coords) {
            if (p.is_zero()) continue;
            g = g.is_zero() ? primitive_part(p) : gcd_primitive(g, p);
            if (g.is_constant()) break;
        }
        if (!g.is_constant())
            for (auto& p : coords) p = divexact(p, g);
    }

    Integer cont = 0;
    for (const auto& p : coords) {
        for (const auto& x : p.coeffs()) {
            mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), x.get_mpz_t());
            if (cont == 1) break;
        }
        if (cont == 1) break;
    }
    for (const auto& p : coords) {
        if (p.is_zero()) continue;
        if (sgn(p.lead()) < 0) cont = -cont;
        break;
    }
    if (cont != 1)
        for (auto& p : coords)
            for (auto& x : p.mutable_coeffs()) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), cont.get_mpz_t());

    ProjectivePoint out;
    out.c_ = std::move(coords);
    return out;
}

inline ProjectivePoint pp_normalize(std::span<const UniPoly> raw) {
    Integer l = 1;
    for (const auto& p : raw) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), detail::denominator_lcm(p).get_mpz_t());
    std::vector<ZPoly> z;
    z.reserve(raw.size());
    for (const auto& p : raw) z.push_back(detail::scaled_to_integer(p, l));
    return ProjectivePoint::from_integer(std::move(z));
}

/// Clears denominators, removes the common factor and fixes the scaling.
inline ProjectivePoint pp_normalize(std::span<const RationalFunc> raw) {
    UniPoly l(Rational(1));
    for (const auto& x : raw) {
        if (x.is_zero() || x.den().is_constant()) continue;
        UniPoly g = poly_gcd(l, x.den());
        l = l * divmod(x.den(), g).first;
    }
    std::vector<UniPoly> polys;
    polys.reserve(raw.size());
    for (const auto& x : raw) polys.push_back(x.is_zero() ? UniPoly() : x.num() * divmod(l, x.den()).first);
    return pp_normalize(std::span<const UniPoly>(polys));
}

inline ProjectivePoint pp_normalize(std::initializer_list<RationalFunc> raw) {
    return pp_normalize(std::span<const RationalFunc>(raw.begin(), raw.size()));
}

inline bool pp_equals(const ProjectivePoint& x, const ProjectivePoint& y) {
    if (x.k() != y.k()) throw Error(Errc::DimensionMismatch, "points live in different projective spaces");
    return x == y;
}

/// max_i deg(coords_i): the degree of the pullback of O(1) along the section.
inline std::size_t naive_height(const ProjectivePoint& x) {
    std::size_t h = 0;
    for (const auto& p : x.coords())
        if (auto d = p.degree()) h = std::max(h, *d);
    return h;
}

/// The point of P^k(Q) in the fiber over t0 (never all zero: coordinates are coprime).
inline std::vector<Rational> pp_specialize(const ProjectivePoint& x, const Rational& t0) {
    std::vector<Rational> out;
    out.reserve(x.coords().size());
    for (const auto& p : x.coords()) out.push_back(p.eval(t0));
    return out;
}

inline std::vector<std::string> to_literals(const ProjectivePoint& x) {
    std::vector<std::string> out;
    for (const auto& p : x.coords()) out.push_back(to_string(p));
    return out;
}

inline std::string to_string(const ProjectivePoint& x) {
    std::string s = "[";
    for (std::size_t i = 0; i < x.coords().size(); ++i) {
        if (i) s += ", ";
        s += to_string(x.coords()[i]);
    }
    return s + "]";
}

struct PointHash {
    std::size_t operator()(const ProjectivePoint& x) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto mix = [&h](std::uint64_t v) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        };
        for (const auto& p : x.coords()) {
            mix(p.size());
            for (const auto& c : p.coeffs()) {
                const std::size_t n = mpz_size(c.get_mpz_t());
                const mp_limb_t* limbs = mpz_limbs_read(c.get_mpz_t());
                mix(static_cast<std::uint64_t>(sgn(c) + 2));
                // Low and high limbs suffice; equality is always checked exactly.
                if (n > 0) mix(limbs[0]);
                if (n > 1) mix(limbs[n - 1]);
                mix(n);
            }
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace ffh

#endif  // FFH_PROJECTIVE_HPP
