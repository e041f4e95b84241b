#ifndef FFH_ISOTRIVIALITY_HPP
#define FFH_ISOTRIVIALITY_HPP

// Isotriviality test for endomorphisms of P^1 through the multipliers of their
// fixed points. The multipliers are never extracted as roots: they are the
// eigenvalues of multiplication by lambda(z) = f'(z) in Q(t)[z]/(Phi), so their
// elementary symmetric functions come from a characteristic polynomial.

#include "ffh/endomorphism.hpp"
#include "ffh/linalg.hpp"

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

namespace ffh {

/// A polynomial in z with coefficients in Q[t]; c[i] multiplies z^i.
struct ZtPoly {
    std::vector<UniPoly> c;

    std::optional<std::size_t> degree() const {
        for (std::size_t i = c.size(); i-- > 0;)
            if (!c[i].is_zero()) return i;
        return std::nullopt;
    }
    UniPoly coeff(std::size_t i) const { return i < c.size() ? c[i] : UniPoly(); }
    friend bool operator==(const ZtPoly& a, const ZtPoly& b) {
        const std::size_t n = std::max(a.c.size(), b.c.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a.coeff(i) != b.coeff(i)) return false;
        return true;
    }
};

inline std::string to_string(const ZtPoly& p) {
    std::string out;
    for (std::size_t i = p.c.size(); i-- > 0;) {
        const UniPoly& a = p.c[i];
        if (a.is_zero()) continue;
        std::string coef = to_string(a);
        const bool single = std::count_if(a.coeffs().begin(), a.coeffs().end(), [](const Rational& x) { return !is_zero(x); }) == 1;
        bool neg = false;
        if (single && coef.front() == '-') {
            neg = true;
            coef.erase(0, 1);
        }
        if (!out.empty())
            out += neg ? " - " : " + ";
        else if (neg)
            out += "-";
        std::string mono = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
        if (mono.empty())
            out += single ? coef : "(" + coef + ")";
        else if (coef == "1")
            out += mono;
        else
            out += (single ? coef : "(" + coef + ")") + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

struct FixedPointData {
    ZtPoly phi;               // numerator of f(z) - z in the chart z = X0/X1
    bool infinity_fixed = false;
    ZtPoly multiplier_num;    // lambda(z) = multiplier_num / multiplier_den at fixed points
    ZtPoly multiplier_den;
};

inline void require_p1(const Endomorphism& f) {
    if (f.k() != 1)
        throw Error(Errc::UnsupportedShape, "multiplier invariants need a map of P^1, got P^" + std::to_string(f.k()));
}

/// Fixed-point equation and multiplier expression. With P = F0(z,1) and
/// Q = F1(z,1), Phi = P - zQ and lambda = (P' - zQ')/Q at any finite fixed point.
inline FixedPointData fixed_point_data(const Endomorphism& f) {
    require_p1(f);
    const unsigned d = f.d();
    ZtPoly p{std::vector<UniPoly>(d + 1)}, q{std::vector<UniPoly>(d + 1)};
    for (const auto& [e, c] : f.forms()[0].poly().terms()) p.c[e[0]] = c;
    for (const auto& [e, c] : f.forms()[1].poly().terms()) q.c[e[0]] = c;

    FixedPointData out;
    out.infinity_fixed = q.c[d].is_zero();
    out.phi.c.assign(d + 2, UniPoly());
    for (std::size_t i = 0; i <= d; ++i) {
        out.phi.c[i] += p.c[i];
        out.phi.c[i + 1] -= q.c[i];
    }
    // P' - zQ' = sum_i i p_i z^(i-1) - sum_i i q_i z^i.
    out.multiplier_num.c.assign(d + 1, UniPoly());
    for (std::size_t i = 1; i <= d; ++i) {
        const UniPoly n(Rational(static_cast<long>(i)));
        out.multiplier_num.c[i - 1] += n * p.c[i];
        out.multiplier_num.c[i] -= n * q.c[i];
    }
    out.multiplier_den = q;
    while (!out.phi.c.empty() && out.phi.c.back().is_zero()) out.phi.c.pop_back();
    while (!out.multiplier_num.c.empty() && out.multiplier_num.c.back().is_zero()) out.multiplier_num.c.pop_back();
    while (!out.multiplier_den.c.empty() && out.multiplier_den.c.back().is_zero()) out.multiplier_den.c.pop_back();
    return out;
}

/// sigma[i] is the (i+1)-th elementary symmetric function of the d+1 fixed-point
/// multipliers, counted with multiplicity.
struct MultiplierInvariants {
    std::vector<RationalFunc> sigma;

    const RationalFunc& operator[](std::size_t i) const { return sigma.at(i - 1); }
    friend bool operator==(const MultiplierInvariants&, const MultiplierInvariants&) = default;
};

namespace detail {

// Matrix of multiplication by a in Q(t)[z]/(phi), phi of degree n, basis 1..z^(n-1).
inline Matrix<RationalFunc> multiplication_matrix(const ZtPoly& a, const ZtPoly& phi) {
    const std::size_t n = *phi.degree();
    const RationalFunc lead(phi.c[n]);
    Matrix<RationalFunc> z(n, n);  // companion matrix of z
    for (std::size_t i = 0; i + 1 < n; ++i) z(i + 1, i) = RationalFunc(1);
    for (std::size_t i = 0; i < n; ++i) z(i, n - 1) = -RationalFunc(phi.c[i]) / lead;

    Matrix<RationalFunc> acc(n, n);
    for (std::size_t i = a.c.size(); i-- > 0;) {
        acc = acc * z;
        if (!a.c[i].is_zero())
            for (std::size_t r = 0; r < n; ++r) acc(r, r) += RationalFunc(a.c[i]);
    }
    return acc;
}

// Coefficients c_0..c_n of det(x I - a) by Faddeev-LeVerrier.
inline std::vector<RationalFunc> characteristic_polynomial(const Matrix<RationalFunc>& a) {
    const std::size_t n = a.rows();
    std::vector<RationalFunc> c(n + 1);
    c[n] = RationalFunc(1);
    Matrix<RationalFunc> m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
        Matrix<RationalFunc> am = a * m;
        RationalFunc tr;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / RationalFunc(static_cast<long>(k));
        m = std::move(am);
    }
    return c;
}

}  // namespace detail

/// Moves a fixed point at infinity into the affine chart: conjugates by
/// z -> 1/(z + c) for the first c in 1, -1, 2, -2, ... with -c not fixed.
inline Endomorphism move_fixed_points_off_infinity(const Endomorphism& f) {
    const FixedPointData data = fixed_point_data(f);
    if (!data.infinity_fixed) return f;
    for (std::size_t i = 0;; ++i) {
        const Rational c = specialization_point(i);
        UniPoly at;  // Phi(-c) in Q[t]
        for (std::size_t j = data.phi.c.size(); j-- > 0;) at = at * UniPoly(Rational(-c)) + data.phi.c[j];
        if (at.is_zero()) continue;
        return conjugate(f, mobius(UniPoly(), UniPoly(Rational(1)), UniPoly(Rational(1)), UniPoly(c)));
    }
}

inline MultiplierInvariants multiplier_invariants(const Endomorphism& f) {
    require_p1(f);
    const Endomorphism g = move_fixed_points_off_infinity(f);
    const FixedPointData data = fixed_point_data(g);
    if (data.infinity_fixed || *data.phi.degree() != g.d() + 1)
        throw Error(Errc::Internal, "fixed point at infinity survived the coordinate change");
    const auto mn = detail::multiplication_matrix(data.multiplier_num, data.phi);
    const auto mq = detail::multiplication_matrix(data.multiplier_den, data.phi);
    // Q is a unit modulo Phi: a common root would be a common zero of F0 and F1.
    const auto mq_inv = inverse(mq);
    if (!mq_inv) throw Error(Errc::Internal, "denominator of the multiplier is not invertible");
    const auto poly = detail::characteristic_polynomial(mn * *mq_inv);
    const std::size_t n = poly.size() - 1;
    MultiplierInvariants out;
    for (std::size_t k = 1; k <= n; ++k) out.sigma.push_back(k % 2 ? -poly[n - k] : poly[n - k]);
    return out;
}

struct Isotrivial {
    friend bool operator==(const Isotrivial&, const Isotrivial&) = default;
};
struct NonIsotrivial {
    std::size_t witness = 0;  // index i of the nonconstant sigma_i
    RationalFunc value;
    friend bool operator==(const NonIsotrivial&, const NonIsotrivial&) = default;
};
struct Inconclusive {
    std::string reason;
    friend bool operator==(const Inconclusive&, const Inconclusive&) = default;
};

using IsotrivialityVerdict = std::variant<Isotrivial, NonIsotrivial, Inconclusive>;

/// Degree 2: (sigma1, sigma2) are coordinates on the moduli space, so the family
/// is isotrivial iff both are constant. Higher degree: a nonconstant sigma
/// proves non-isotriviality, constant ones decide nothing.
inline IsotrivialityVerdict isotriviality_verdict(const Endomorphism& f, const MultiplierInvariants& inv) {
    require_p1(f);
    const std::size_t checked = f.d() == 2 ? 2 : inv.sigma.size();
    for (std::size_t i = 1; i <= checked; ++i)
        if (!inv[i].is_constant()) return NonIsotrivial{i, inv[i]};
    if (f.d() == 2) return Isotrivial{};
    return Inconclusive{"all fixed-point multiplier invariants are constant; in degree " + std::to_string(f.d()) +
                        " they do not determine the conjugacy class"};
}

inline IsotrivialityVerdict isotriviality_verdict(const Endomorphism& f) {
    return isotriviality_verdict(f, multiplier_invariants(f));
}

inline std::string to_string(const IsotrivialityVerdict& v) {
    if (std::holds_alternative<Isotrivial>(v)) return "Isotrivial";
    if (const auto* n = std::get_if<NonIsotrivial>(&v))
        return "NonIsotrivial {sigma" + std::to_string(n->witness) + " = " + to_string(n->value) + "}";
    return "Inconclusive {" + std::get<Inconclusive>(v).reason + "}";
}

}  // namespace ffh

#endif  // FFH_ISOTRIVIALITY_HPP
