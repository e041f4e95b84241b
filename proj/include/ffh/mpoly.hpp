#ifndef FFH_MPOLY_HPP
#define FFH_MPOLY_HPP

// Polynomials in the homogeneous coordinates X0..Xk with coefficients in Q[t].

#include "ffh/poly.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace ffh {

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

/// All exponent vectors of `nvars` variables with total degree `deg`, in
/// descending lexicographic order (X0^deg first).
inline std::vector<Exponents> monomials(std::size_t nvars, unsigned deg) {
    std::vector<Exponents> out;
    if (nvars == 0) {
        if (deg == 0) out.emplace_back();
        return out;
    }
    Exponents e(nvars, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == nvars) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (unsigned a = left + 1; a-- > 0;) {
            e[i] = a;
            rec(i + 1, left - a);
        }
    };
    rec(0, deg);
    return out;
}

class MPoly {
public:
    using TermMap = std::map<Exponents, UniPoly, std::greater<>>;

    explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static MPoly constant(std::size_t nvars, const UniPoly& c) {
        MPoly p(nvars);
        if (!c.is_zero()) p.terms_[Exponents(nvars, 0)] = c;
        return p;
    }
    static MPoly variable(std::size_t nvars, std::size_t i) {
        MPoly p(nvars);
        Exponents e(nvars, 0);
        e.at(i) = 1;
        p.terms_[e] = UniPoly(Rational(1));
        return p;
    }
    static MPoly term(const Exponents& e, const UniPoly& c) {
        MPoly p(e.size());
        if (!c.is_zero()) p.terms_[e] = c;
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    UniPoly coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? UniPoly() : it->second;
    }

    /// Common total degree of every term, or nullopt when the terms disagree or
    /// the polynomial is zero.
    std::optional<unsigned> homogeneous_degree() const {
        std::optional<unsigned> d;
        for (const auto& [e, c] : terms_) {
            unsigned td = total_degree(e);
            if (d && *d != td) return std::nullopt;
            d = td;
        }
        return d;
    }

    /// Maximum t-degree over all coefficients (0 for the zero polynomial).
    std::size_t t_degree() const {
        std::size_t m = 0;
        for (const auto& [e, c] : terms_) m = std::max(m, *c.degree());
        return m;
    }

    /// Coefficients with t specialized to t0.
    std::map<Exponents, Rational, std::greater<>> specialize(const Rational& t0) const {
        std::map<Exponents, Rational, std::greater<>> out;
        for (const auto& [e, c] : terms_) {
            Rational v = c.eval(t0);
            if (!ffh::is_zero(v)) out[e] = v;
        }
        return out;
    }

    MPoly& operator+=(const MPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator-(const MPoly& a) { return MPoly(a.nvars_) - a; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(std::max(a.nvars_, b.nvars_));
        Exponents e(r.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < r.nvars_; ++i)
                    e[i] = (i < ea.size() ? ea[i] : 0u) + (i < eb.size() ? eb[i] : 0u);
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MPoly operator*(const UniPoly& s, MPoly a) {
        if (s.is_zero()) return MPoly(a.nvars_);
        for (auto& [e, c] : a.terms_) c = s * c;
        return a;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    void add_term(const Exponents& e, const UniPoly& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Substitutes subs[i] for Xi.
    MPoly substitute(const std::vector<MPoly>& subs) const {
        const std::size_t nv = subs.empty() ? 0 : subs.front().nvars();
        MPoly r(nv);
        for (const auto& [e, c] : terms_) {
            MPoly m = MPoly::constant(nv, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned a = 0; a < e[i]; ++a) m = m * subs.at(i);
            r += m;
        }
        return r;
    }

private:
    std::size_t nvars_;
    TermMap terms_;
};

inline MPoly pow(const MPoly& base, unsigned e) {
    MPoly r = MPoly::constant(base.nvars(), UniPoly(Rational(1)));
    for (unsigned i = 0; i < e; ++i) r = r * base;
    return r;
}

namespace detail {
inline std::string monomial_string(const Exponents& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "X" + std::to_string(i);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}
}  // namespace detail

/// Literal form, e.g. `X0^2 + t*X1^2` or `(t + 1)*X0*X1`.
inline std::string to_string(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : p.terms()) {
        std::string mono = detail::monomial_string(e);
        std::string coef;
        bool neg = false;
        if (c.size() == 1 || std::count_if(c.coeffs().begin(), c.coeffs().end(),
                                           [](const Rational& x) { return sgn(x) != 0; }) == 1) {
            neg = sgn(c.lead()) < 0;
            UniPoly a = neg ? UniPoly(-c) : c;
            coef = to_string(a);
            if (coef == "1" && !mono.empty()) coef.clear();
        } else {
            coef = "(" + to_string(c) + ")";
        }
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += coef;
        if (!coef.empty() && !mono.empty()) out += "*";
        out += mono;
    }
    return out;
}

/// A form of exact degree d in X0..Xk with Q[t] coefficients.
class HomogeneousForm {
public:
    HomogeneousForm() = default;

    /// Validates homogeneity; a zero polynomial needs an explicit degree.
    explicit HomogeneousForm(MPoly p, std::optional<unsigned> degree = std::nullopt) : poly_(std::move(p)) {
        if (poly_.nvars() == 0) throw Error(Errc::DimensionMismatch, "form needs at least one variable");
        auto hd = poly_.homogeneous_degree();
        if (poly_.is_zero()) {
            if (!degree) throw Error(Errc::InhomogeneousInput, "zero form has no degree");
            d_ = *degree;
        } else if (!hd) {
            throw Error(Errc::InhomogeneousInput, "form `" + to_string(poly_) + "` is not homogeneous");
        } else {
            if (degree && *degree != *hd)
                throw Error(Errc::InhomogeneousInput, "form `" + to_string(poly_) + "` has degree " +
                                                          std::to_string(*hd) + ", expected " +
                                                          std::to_string(*degree));
            d_ = *hd;
        }
    }

    std::size_t k() const { return poly_.nvars() - 1; }
    unsigned d() const { return d_; }
    const MPoly& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }

    friend bool operator==(const HomogeneousForm& a, const HomogeneousForm& b) {
        return a.d_ == b.d_ && a.poly_ == b.poly_;
    }

private:
    MPoly poly_{1};
    unsigned d_ = 0;
};

inline std::string to_string(const HomogeneousForm& f) { return to_string(f.poly()); }

}  // namespace ffh

#endif  // FFH_MPOLY_HPP
