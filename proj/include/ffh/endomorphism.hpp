#ifndef FFH_ENDOMORPHISM_HPP
#define FFH_ENDOMORPHISM_HPP

// Endomorphisms of P^k over Q(t), given by k+1 forms of common degree d >= 2.
//
// endo_build certifies the morphism property and derives the height-defect
// constant C with |h(f(x)) - d h(x)| <= C for every K-point x. With the
// cofactor identity sum_j g_ij F_j = R X_i^rho and D = max t-degree of the
// g_ij, the gcd of the values F_j(x) divides R, which gives
//     d h(x) - D <= h(f(x)) <= d h(x) + h(f),
// so C = max(h(f), D).

#include "ffh/projective.hpp"
#include "ffh/resultant.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ffh {

class Endomorphism {
public:
    std::size_t k() const { return forms_.size() - 1; }
    unsigned d() const { return forms_.front().d(); }
    const std::vector<HomogeneousForm>& forms() const { return forms_; }
    /// h(f): maximum t-degree among the coefficients of the normalized forms.
    std::size_t coeff_height() const { return coeff_height_; }
    const ResultantCertificate& certificate() const { return certificate_; }
    /// The constant C of the height comparison.
    std::size_t defect_bound() const { return defect_bound_; }
    const CofactorIdentity& cofactors() const { return cofactors_; }
    /// For maps with constant coefficients: an integer A such that any
    /// constant point with max |coordinate|^(d-1) > A has a strictly growing,
    /// hence non-repeating, orbit.
    const std::optional<Integer>& escape_constant() const { return escape_constant_; }

    friend bool operator==(const Endomorphism& a, const Endomorphism& b) { return a.forms_ == b.forms_; }

private:
    friend Endomorphism endo_build(std::vector<HomogeneousForm> forms);
    friend ProjectivePoint evaluate(const Endomorphism& f, const ProjectivePoint& x);

    std::vector<HomogeneousForm> forms_;
    std::size_t coeff_height_ = 0;
    ResultantCertificate certificate_;
    CofactorIdentity cofactors_;
    std::size_t defect_bound_ = 0;
    std::optional<Integer> escape_constant_;

    std::vector<std::vector<std::pair<Exponents, ZPoly>>> zforms_;
    UniPoly eliminant_;  // monic R; the gcd of F_j(x) always divides it
};

namespace detail {

// Divides the tuple by its Q[t]-content and rescales to primitive integer
// coefficients with a positive leading coefficient on the first term.
inline std::vector<HomogeneousForm> normalize_forms(const std::vector<HomogeneousForm>& forms) {
    std::vector<UniPoly> coeffs;
    for (const auto& f : forms)
        for (const auto& [e, c] : f.poly().terms()) coeffs.push_back(c);
    if (coeffs.empty()) throw Error(Errc::NotAMorphism, "all forms are zero");
    UniPoly g = content_and_primitive(coeffs).gcd;

    std::vector<MPoly> divided;
    Integer l = 1;
    for (const auto& f : forms) {
        MPoly p(f.poly().nvars());
        for (const auto& [e, c] : f.poly().terms()) {
            UniPoly q = divmod(c, g).first;
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), denominator_lcm(q).get_mpz_t());
            p.add_term(e, q);
        }
        divided.push_back(std::move(p));
    }
    Integer cont = 0;
    for (const auto& p : divided)
        for (const auto& [e, c] : p.terms()) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), content(scaled_to_integer(c, l)).get_mpz_t());
    for (const auto& p : divided)
        if (!p.is_zero()) {
            if (sgn(p.terms().begin()->second.lead()) < 0) cont = -cont;
            break;
        }
    Rational scale(l, cont);
    scale.canonicalize();
    std::vector<HomogeneousForm> out;
    for (std::size_t i = 0; i < divided.size(); ++i)
        out.emplace_back(UniPoly(scale) * divided[i], forms[i].d());
    return out;
}

}  // namespace detail

/// Normalizes the tuple, certifies it is a morphism and computes h(f) and C.
inline Endomorphism endo_build(std::vector<HomogeneousForm> forms) {
    check_form_shape(forms);
    if (forms.front().d() < 2)
        throw Error(Errc::DegreeTooSmall, "degree " + std::to_string(forms.front().d()) + " < 2");

    Endomorphism f;
    f.forms_ = detail::normalize_forms(forms);
    f.certificate_ = morphism_check(f.forms_);
    for (const auto& form : f.forms_) f.coeff_height_ = std::max(f.coeff_height_, form.poly().t_degree());
    f.cofactors_ = solve_cofactors(f.forms_);
    f.defect_bound_ = std::max(f.coeff_height_, f.cofactors_.cofactor_degree);
    f.eliminant_ = monic(f.cofactors_.multiplier);

    for (const auto& form : f.forms_) {
        std::vector<std::pair<Exponents, ZPoly>> terms;
        for (const auto& [e, c] : form.poly().terms()) terms.emplace_back(e, to_zpoly_exact(c));
        f.zforms_.push_back(std::move(terms));
    }

    if (f.coeff_height_ == 0) {
        // Integer form of the identity: scale cofactors and R to integers.
        Integer l = 1;
        for (const auto& row : f.cofactors_.cofactors)
            for (const auto& g : row)
                for (const auto& [e, c] : g.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.lead().get_den_mpz_t());
        Integer a = 0;
        for (const auto& row : f.cofactors_.cofactors) {
            Integer sum = 0;
            for (const auto& g : row)
                for (const auto& [e, c] : g.terms()) sum += abs(Rational(c.lead() * l).get_num());
            if (sum > a) a = sum;
        }
        f.escape_constant_ = a;
    }
    return f;
}

inline std::size_t height_defect_bound(const Endomorphism& f) { return f.defect_bound(); }

/// f(x) in canonical coordinates.
inline ProjectivePoint evaluate(const Endomorphism& f, const ProjectivePoint& x) {
    if (x.k() != f.k())
        throw Error(Errc::DimensionMismatch, "point in P^" + std::to_string(x.k()) + ", map on P^" +
                                                 std::to_string(f.k()));
    const std::size_t nv = f.k() + 1;
    const unsigned d = f.d();
    const auto& xc = x.coords();

    std::vector<std::vector<ZPoly>> pw(nv);
    for (std::size_t l = 0; l < nv; ++l) {
        pw[l].push_back(ZPoly(1));
        for (unsigned a = 1; a <= d; ++a) pw[l].push_back(a == 1 ? xc[l] : pw[l][a - 1] * xc[l]);
    }
    std::map<Exponents, ZPoly> mono_cache;
    auto mono = [&](const Exponents& e) -> const ZPoly& {
        auto it = mono_cache.find(e);
        if (it != mono_cache.end()) return it->second;
        ZPoly m(1);
        bool first = true;
        for (std::size_t l = 0; l < nv; ++l) {
            if (e[l] == 0) continue;
            m = first ? pw[l][e[l]] : m * pw[l][e[l]];
            first = false;
        }
        return mono_cache.emplace(e, std::move(m)).first->second;
    };

    std::vector<ZPoly> vals(nv);
    for (std::size_t j = 0; j < nv; ++j)
        for (const auto& [e, c] : f.zforms_[j]) vals[j] += c * mono(e);

    if (!f.eliminant_.is_constant()) {
        // gcd_j F_j(x) divides R, so it can be found from residues mod R.
        const UniPoly& r = f.eliminant_;
        std::vector<UniPoly> xr;
        for (const auto& p : xc) xr.push_back(rem(to_unipoly(p), r));
        UniPoly g = r;
        for (std::size_t j = 0; j < nv && !g.is_constant(); ++j) {
            UniPoly acc;
            for (const auto& [e, c] : f.zforms_[j]) {
                UniPoly m = to_unipoly(c);
                for (std::size_t l = 0; l < nv; ++l)
                    for (unsigned a = 0; a < e[l]; ++a) m = rem(m * xr[l], r);
                acc += m;
            }
            g = poly_gcd(g, rem(acc, r));
        }
        if (!g.is_constant()) {
            ZPoly gz = primitive_integer(g);
            for (auto& v : vals) v = divexact(v, gz);
        }
    }
    return ProjectivePoint::from_integer(std::move(vals), /*coprime=*/true);
}

/// (x, f(x), ..., f^n(x)).
inline std::vector<ProjectivePoint> orbit(const Endomorphism& f, const ProjectivePoint& x, std::size_t n) {
    std::vector<ProjectivePoint> out{x};
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) out.push_back(evaluate(f, out.back()));
    return out;
}

// ---------------------------------------------------------------------------
// Linear changes of coordinates

/// An invertible (k+1)x(k+1) matrix over Q[t] acting on homogeneous coordinates.
struct LinearChange {
    std::vector<std::vector<UniPoly>> m;
    std::size_t size() const { return m.size(); }
};

/// z -> (a z + b) / (c z + d) on P^1.
inline LinearChange mobius(const UniPoly& a, const UniPoly& b, const UniPoly& c, const UniPoly& d) {
    return LinearChange{{{a, b}, {c, d}}};
}

namespace detail {
inline UniPoly minor_det(const std::vector<std::vector<UniPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    UniPoly det;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<UniPoly>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<UniPoly> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            sub.push_back(std::move(row));
        }
        UniPoly term = m[0][c] * minor_det(sub);
        det = (c % 2 == 0) ? det + term : det - term;
    }
    return det;
}
}  // namespace detail

inline UniPoly determinant(const LinearChange& M) { return detail::minor_det(M.m); }

/// The adjugate, which acts on P^k as the inverse.
inline LinearChange adjugate(const LinearChange& M) {
    const std::size_t n = M.size();
    LinearChange adj{std::vector<std::vector<UniPoly>>(n, std::vector<UniPoly>(n))};
    if (n == 1) {
        adj.m[0][0] = UniPoly(Rational(1));
        return adj;
    }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<std::vector<UniPoly>> sub;
            for (std::size_t rr = 0; rr < n; ++rr) {
                if (rr == r) continue;
                std::vector<UniPoly> row;
                for (std::size_t cc = 0; cc < n; ++cc)
                    if (cc != c) row.push_back(M.m[rr][cc]);
                sub.push_back(std::move(row));
            }
            UniPoly cof = detail::minor_det(sub);
            adj.m[c][r] = ((r + c) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

inline ProjectivePoint apply(const LinearChange& M, const ProjectivePoint& x) {
    if (M.size() != x.k() + 1) throw Error(Errc::DimensionMismatch, "matrix and point dimensions differ");
    std::vector<UniPoly> out(M.size());
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < M.size(); ++j) out[i] += M.m[i][j] * to_unipoly(x.coords()[j]);
    return pp_normalize(std::span<const UniPoly>(out));
}

/// M o f o M^{-1}.
inline Endomorphism conjugate(const Endomorphism& f, const LinearChange& M) {
    const std::size_t nv = f.k() + 1;
    if (M.size() != nv) throw Error(Errc::DimensionMismatch, "matrix and map dimensions differ");
    if (determinant(M).is_zero()) throw Error(Errc::NotAPoint, "singular coordinate change");
    const LinearChange inv = adjugate(M);
    std::vector<MPoly> subs;
    for (std::size_t l = 0; l < nv; ++l) {
        MPoly lin(nv);
        for (std::size_t m = 0; m < nv; ++m) lin += inv.m[l][m] * MPoly::variable(nv, m);
        subs.push_back(std::move(lin));
    }
    std::vector<MPoly> pulled;
    for (const auto& form : f.forms()) pulled.push_back(form.poly().substitute(subs));
    std::vector<HomogeneousForm> out;
    for (std::size_t i = 0; i < nv; ++i) {
        MPoly g(nv);
        for (std::size_t j = 0; j < nv; ++j) g += M.m[i][j] * pulled[j];
        out.emplace_back(std::move(g), f.d());
    }
    return endo_build(std::move(out));
}

}  // namespace ffh

#endif  // FFH_ENDOMORPHISM_HPP
