#ifndef FFH_RESULTANT_HPP
#define FFH_RESULTANT_HPP

// Elimination theory for k+1 forms of common degree d in k+1 variables:
// Macaulay's determinant formula for the resultant over Q, and the cofactor
// identity  sum_j g_ij F_j = R * X_i^rho  over Q(t).

#include "ffh/linalg.hpp"
#include "ffh/mpoly.hpp"
#include "ffh/ratfunc.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace ffh {

using SpecializedForm = std::map<Exponents, Rational, std::greater<>>;

/// Saturation degree (k+1)(d-1)+1 of k+1 forms of degree d.
inline unsigned macaulay_degree(std::size_t nvars, unsigned d) {
    return static_cast<unsigned>(nvars) * (d - 1) + 1;
}

namespace detail {

struct MacaulayLayout {
    unsigned rho = 0;
    std::vector<Exponents> monos;
    std::map<Exponents, std::size_t> index;
    std::vector<std::size_t> row_form;  // which form multiplies into each row
    std::vector<std::size_t> nonreduced;
};

inline MacaulayLayout macaulay_layout(std::size_t nvars, unsigned d) {
    MacaulayLayout L;
    L.rho = macaulay_degree(nvars, d);
    L.monos = monomials(nvars, L.rho);
    for (std::size_t r = 0; r < L.monos.size(); ++r) {
        const auto& m = L.monos[r];
        L.index[m] = r;
        std::size_t first = nvars, hits = 0;
        for (std::size_t i = 0; i < nvars; ++i)
            if (m[i] >= d) {
                if (first == nvars) first = i;
                ++hits;
            }
        L.row_form.push_back(first);
        if (hits > 1) L.nonreduced.push_back(r);
    }
    return L;
}

inline Matrix<Rational> macaulay_matrix(const MacaulayLayout& L, std::span<const SpecializedForm> forms,
                                        unsigned d) {
    const std::size_t n = L.monos.size();
    Matrix<Rational> m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t i = L.row_form[r];
        Exponents shift = L.monos[r];
        shift[i] -= d;
        for (const auto& [e, c] : forms[i]) {
            Exponents target = e;
            for (std::size_t v = 0; v < target.size(); ++v) target[v] += shift[v];
            m(r, L.index.at(target)) = c;
        }
    }
    return m;
}

inline Matrix<Rational> submatrix(const Matrix<Rational>& m, const std::vector<std::size_t>& idx) {
    Matrix<Rational> s(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) s(a, b) = m(idx[a], idx[b]);
    return s;
}

}  // namespace detail

/// Macaulay resultant of nvars forms of degree d over Q, normalized so that
/// Res(X0^d, ..., Xk^d) = 1. When the extraneous minor vanishes the forms are
/// perturbed to F_i + u X_i^d and the value at u = 0 is interpolated.
inline Rational macaulay_resultant(std::span<const SpecializedForm> forms, unsigned d) {
    const std::size_t nvars = forms.size();
    const auto L = detail::macaulay_layout(nvars, d);
    auto ratio = [&](std::span<const SpecializedForm> fs) -> std::optional<Rational> {
        Matrix<Rational> m = detail::macaulay_matrix(L, fs, d);
        Rational extraneous = determinant(detail::submatrix(m, L.nonreduced));
        if (is_zero(extraneous)) return std::nullopt;
        return determinant(std::move(m)) / extraneous;
    };
    if (auto r = ratio(forms)) return *r;

    // Res(F + u X^d) is a polynomial in u of degree <= nvars * d^(nvars-1).
    std::size_t deg_u = nvars;
    for (std::size_t i = 1; i < nvars; ++i) deg_u *= d;
    std::vector<Rational> us, vals;
    std::vector<SpecializedForm> shifted(forms.begin(), forms.end());
    for (long u = 1; us.size() <= deg_u; ++u) {
        for (std::size_t i = 0; i < nvars; ++i) {
            shifted[i] = forms[i];
            Exponents e(nvars, 0);
            e[i] = d;
            shifted[i][e] += Rational(u);
            if (is_zero(shifted[i][e])) shifted[i].erase(e);
        }
        if (auto r = ratio(shifted)) {
            us.emplace_back(u);
            vals.push_back(*r);
        }
    }
    Rational at_zero = 0;
    for (std::size_t j = 0; j < us.size(); ++j) {
        Rational w = vals[j];
        for (std::size_t m = 0; m < us.size(); ++m)
            if (m != j) w *= -us[m] / (us[j] - us[m]);
        at_zero += w;
    }
    return at_zero;
}

/// Coefficients of every form specialized at t0.
inline std::vector<SpecializedForm> specialize_forms(std::span<const HomogeneousForm> forms, const Rational& t0) {
    std::vector<SpecializedForm> out;
    out.reserve(forms.size());
    for (const auto& f : forms) out.push_back(f.poly().specialize(t0));
    return out;
}

/// Witness that the forms have no common zero over the algebraic closure of Q(t).
struct ResultantCertificate {
    Rational t0;
    Rational value;                     // Res(F)(t0), nonzero
    std::size_t res_degree_bound = 0;   // (k+1) d^k h(f) bounds deg_t Res

    friend bool operator==(const ResultantCertificate&, const ResultantCertificate&) = default;
};

/// Parameters 1, -1, 2, -2, ... in order.
inline Rational specialization_point(std::size_t i) {
    const long m = static_cast<long>(i / 2) + 1;
    return Rational(i % 2 == 0 ? m : -m);
}

inline void check_form_shape(std::span<const HomogeneousForm> forms) {
    if (forms.size() < 2) throw Error(Errc::DimensionMismatch, "need k+1 >= 2 forms");
    for (const auto& f : forms)
        if (f.poly().nvars() != forms.size())
            throw Error(Errc::DimensionMismatch, "expected " + std::to_string(forms.size()) +
                                                     " forms in as many variables");
    for (const auto& f : forms)
        if (f.d() != forms.front().d())
            throw Error(Errc::InhomogeneousInput, "forms have different degrees (" +
                                                      std::to_string(forms.front().d()) + " and " +
                                                      std::to_string(f.d()) + ")");
}

/// Certifies that the forms define a morphism on the generic fiber. Succeeds
/// at the first parameter with nonzero resultant; fails with NotAMorphism
/// after res_degree_bound + 1 vanishing specializations.
inline ResultantCertificate morphism_check(std::span<const HomogeneousForm> forms) {
    check_form_shape(forms);
    const std::size_t nvars = forms.size();
    const unsigned d = forms.front().d();
    if (d == 0) throw Error(Errc::DegreeTooSmall, "forms of degree 0");
    std::size_t h = 0;
    for (const auto& f : forms) h = std::max(h, f.poly().t_degree());
    std::size_t bound = nvars * h;
    for (std::size_t i = 1; i < nvars; ++i) bound *= d;
    for (std::size_t i = 0; i <= bound; ++i) {
        Rational t0 = specialization_point(i);
        auto spec = specialize_forms(forms, t0);
        Rational v = macaulay_resultant(spec, d);
        if (!is_zero(v)) return {t0, v, bound};
    }
    throw Error(Errc::NotAMorphism, "the forms share a common zero (resultant vanishes at " +
                                        std::to_string(bound + 1) + " parameters)");
}

/// sum_j cofactors[i][j] * F_j = multiplier * X_i^rho for every i, with one
/// common multiplier R in Q[t].
struct CofactorIdentity {
    unsigned rho = 0;
    UniPoly multiplier;
    std::vector<std::vector<MPoly>> cofactors;
    std::size_t cofactor_degree = 0;  // max t-degree over all cofactor coefficients
};

/// Checks the identity by direct expansion.
inline bool verify_cofactors(std::span<const HomogeneousForm> forms, const CofactorIdentity& id) {
    const std::size_t nvars = forms.size();
    for (std::size_t i = 0; i < nvars; ++i) {
        MPoly lhs(nvars);
        for (std::size_t j = 0; j < nvars; ++j) lhs += id.cofactors[i][j] * forms[j].poly();
        Exponents e(nvars, 0);
        e[i] = id.rho;
        if (!(lhs == MPoly::term(e, id.multiplier))) return false;
    }
    return true;
}

namespace detail {

/// Fraction-free Gauss-Jordan over Z[t] on [A | B], A being the first n
/// columns. Every entry stays a minor of the input, so each division by the
/// previous pivot is exact. Returns the numerators of the particular solution
/// (free variables zero) and their common denominator, or nullopt when the
/// system is inconsistent.
inline std::optional<std::pair<Matrix<ZPoly>, ZPoly>> solve_fraction_free(Matrix<ZPoly> m, std::size_t n) {
    const std::size_t cols = m.cols();
    ZPoly prev(std::vector<Integer>{1});
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(row, p);
        const ZPoly piv = m(row, col);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            const ZPoly f = m(i, col);
            for (std::size_t j = 0; j < cols; ++j) {
                ZPoly& e = m(i, j);
                if (e.is_zero() && (f.is_zero() || m(row, j).is_zero())) continue;
                ZPoly v = piv * e;
                if (!f.is_zero() && !m(row, j).is_zero()) v = v - f * m(row, j);
                e = divexact(v, prev);
            }
        }
        prev = piv;
        pivots.push_back(col);
        ++row;
    }
    for (std::size_t i = pivots.size(); i < m.rows(); ++i)
        for (std::size_t j = n; j < cols; ++j)
            if (!m(i, j).is_zero()) return std::nullopt;
    Matrix<ZPoly> x(n, cols - n);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t j = n; j < cols; ++j) x(pivots[r], j - n) = m(r, j);
    return std::make_pair(std::move(x), prev);
}

inline std::optional<CofactorIdentity> try_cofactors(std::span<const HomogeneousForm> forms, unsigned rho) {
    const std::size_t nvars = forms.size();
    const unsigned d = forms.front().d();
    const auto rows = monomials(nvars, rho);
    const auto shifts = monomials(nvars, rho - d);
    std::map<Exponents, std::size_t> row_of;
    for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;

    // Columns of [A | B]; A gets a common integer scale L, so X = L * X'.
    Integer l = 1;
    for (const auto& f : forms)
        for (const auto& [e, c] : f.poly().terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), denominator_lcm(c).get_mpz_t());
    const std::size_t n = nvars * shifts.size();
    Matrix<ZPoly> m(rows.size(), n + nvars);
    for (std::size_t j = 0; j < nvars; ++j)
        for (std::size_t s = 0; s < shifts.size(); ++s)
            for (const auto& [e, c] : forms[j].poly().terms()) {
                Exponents target = e;
                for (std::size_t v = 0; v < nvars; ++v) target[v] += shifts[s][v];
                m(row_of.at(target), j * shifts.size() + s) = scaled_to_integer(c, l);
            }
    for (std::size_t i = 0; i < nvars; ++i) {
        Exponents e(nvars, 0);
        e[i] = rho;
        m(row_of.at(e), n + i) = ZPoly(std::vector<Integer>{1});
    }
    auto sol = solve_fraction_free(std::move(m), n);
    if (!sol) return std::nullopt;
    const UniPoly den = to_unipoly(sol->second);
    const UniPoly scale{Rational(l)};
    Matrix<RationalFunc> xs(n, nvars);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t i = 0; i < nvars; ++i)
            if (!sol->first(u, i).is_zero()) xs(u, i) = RationalFunc::normalized(scale * to_unipoly(sol->first(u, i)), den);

    UniPoly r(Rational(1));
    for (std::size_t u = 0; u < xs.rows(); ++u)
        for (std::size_t i = 0; i < nvars; ++i) {
            const auto& den = xs(u, i).den();
            if (den.is_constant()) continue;
            r = r * divmod(den, poly_gcd(r, den)).first;
        }

    CofactorIdentity id;
    id.rho = rho;
    id.multiplier = r;
    id.cofactors.assign(nvars, std::vector<MPoly>(nvars, MPoly(nvars)));
    for (std::size_t i = 0; i < nvars; ++i)
        for (std::size_t j = 0; j < nvars; ++j)
            for (std::size_t s = 0; s < shifts.size(); ++s) {
                const RationalFunc& v = xs(j * shifts.size() + s, i);
                if (v.is_zero()) continue;
                UniPoly c = v.num() * divmod(r, v.den()).first;
                id.cofactor_degree = std::max(id.cofactor_degree, *c.degree());
                id.cofactors[i][j].add_term(shifts[s], c);
            }
    return id;
}

}  // namespace detail

/// Solves for the cofactors at the Macaulay degree, falling back to larger
/// exponents; the identity is verified by expansion before returning.
inline CofactorIdentity solve_cofactors(std::span<const HomogeneousForm> forms) {
    check_form_shape(forms);
    const unsigned base = macaulay_degree(forms.size(), forms.front().d());
    for (unsigned rho = base; rho <= base + 2; ++rho) {
        auto id = detail::try_cofactors(forms, rho);
        if (!id) continue;
        if (!verify_cofactors(forms, *id)) throw Error(Errc::Internal, "cofactor identity failed verification");
        return *id;
    }
    throw Error(Errc::Internal, "cofactor system unsolvable up to exponent " + std::to_string(base + 2));
}

}  // namespace ffh

#endif  // FFH_RESULTANT_HPP
