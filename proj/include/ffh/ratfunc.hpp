#ifndef FFH_RATFUNC_HPP
#define FFH_RATFUNC_HPP

#include "ffh/poly.hpp"

#include <string>
#include <utility>

namespace ffh {

/// An element of Q(t) in canonical form: coprime numerator and monic
/// denominator, with zero stored as 0/1. Equality is representation equality.
class RationalFunc {
public:
    RationalFunc() : den_(Rational(1)) {}
    RationalFunc(const UniPoly& p) : num_(p), den_(Rational(1)) {}  // NOLINT(google-explicit-constructor)
    RationalFunc(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT(google-explicit-constructor)
    RationalFunc(int c) : RationalFunc(Rational(c)) {}               // NOLINT(google-explicit-constructor)
    RationalFunc(long c) : RationalFunc(Rational(c)) {}              // NOLINT(google-explicit-constructor)

    /// num/den reduced to canonical form; throws DivisionByZero when den = 0.
    static RationalFunc normalized(const UniPoly& num, const UniPoly& den) {
        if (den.is_zero()) throw Error(Errc::DivisionByZero, "zero denominator");
        RationalFunc r;
        if (num.is_zero()) return r;
        if (den.is_constant()) {
            Rational inv = 1 / den.lead();
            r.num_ = num * inv;
            return r;
        }
        UniPoly g = poly_gcd(num, den);
        UniPoly n = g.is_constant() ? num : divmod(num, g).first;
        UniPoly d = g.is_constant() ? den : divmod(den, g).first;
        Rational inv = 1 / d.lead();
        r.num_ = n * inv;
        r.den_ = d * inv;
        return r;
    }

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    /// True when the element lies in Q.
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }

    /// Exact value at t0; throws PoleAtParameter when den(t0) = 0.
    Rational eval(const Rational& t0) const {
        Rational d = den_.eval(t0);
        if (ffh::is_zero(d)) throw Error(Errc::PoleAtParameter, "denominator vanishes at t = " + to_string(t0));
        return num_.eval(t0) / d;
    }

    RationalFunc& operator+=(const RationalFunc& o) { return *this = *this + o; }
    RationalFunc& operator-=(const RationalFunc& o) { return *this = *this - o; }
    RationalFunc& operator*=(const RationalFunc& o) { return *this = *this * o; }
    RationalFunc& operator/=(const RationalFunc& o) { return *this = *this / o; }

    friend RationalFunc operator+(const RationalFunc& a, const RationalFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return normalized(a.num_ + b.num_, a.den_);
        return normalized(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunc operator-(const RationalFunc& a) {
        RationalFunc r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunc operator-(const RationalFunc& a, const RationalFunc& b) { return a + (-b); }
    friend RationalFunc operator*(const RationalFunc& a, const RationalFunc& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_polynomial() && b.is_polynomial()) return RationalFunc(a.num_ * b.num_);
        return normalized(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunc operator/(const RationalFunc& a, const RationalFunc& b) {
        if (b.is_zero()) throw Error(Errc::DivisionByZero, "division by the zero rational function");
        return normalized(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RationalFunc& a, const RationalFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunc& a, const RationalFunc& b) { return !(a == b); }

private:
    UniPoly num_;
    UniPoly den_;
};

inline bool is_zero(const RationalFunc& x) { return x.is_zero(); }

/// Canonical form of num/den.
inline RationalFunc rf_normalize(const UniPoly& num, const UniPoly& den) {
    return RationalFunc::normalized(num, den);
}

inline Rational rf_eval(const RationalFunc& x, const Rational& t0) { return x.eval(t0); }

inline std::string to_string(const RationalFunc& x) {
    if (x.is_polynomial()) return to_string(x.num());
    return "(" + to_string(x.num()) + ")/(" + to_string(x.den()) + ")";
}

}  // namespace ffh

#endif  // FFH_RATFUNC_HPP
