#ifndef FFH_ARITH_HPP
#define FFH_ARITH_HPP

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ffh {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Errc {
    AllZero,
    DivisionByZero,
    PoleAtParameter,
    NotAPoint,
    DimensionMismatch,
    InhomogeneousInput,
    DegreeTooSmall,
    NotAMorphism,
    UnsupportedShape,
    SyntaxError,
    Internal,
};

inline std::string_view errc_name(Errc e) {
    switch (e) {
    case Errc::AllZero: return "AllZero";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::PoleAtParameter: return "PoleAtParameter";
    case Errc::NotAPoint: return "NotAPoint";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InhomogeneousInput: return "InhomogeneousInput";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::NotAMorphism: return "NotAMorphism";
    case Errc::UnsupportedShape: return "UnsupportedShape";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), reason_(what) {}

    Errc code() const noexcept { return code_; }
    /// The message without the error-code prefix.
    const std::string& reason() const noexcept { return reason_; }

private:
    Errc code_;
    std::string reason_;
};

inline bool is_zero(const Integer& x) { return sgn(x) == 0; }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline std::string to_string(const Integer& x) { return x.get_str(); }
inline std::string to_string(const Rational& x) { return x.get_str(); }

inline Rational pow(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return r;
}

inline Integer pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// Decimal rendering truncated toward zero to `digits` places after the point.
/// Presentation only; exact values are always the rational strings.
inline std::string to_decimal(const Rational& x, int digits) {
    Integer scale = pow(Integer(10), static_cast<unsigned long>(digits < 0 ? 0 : digits));
    Integer num = abs(x.get_num()) * scale;
    Integer q = num / x.get_den();
    std::string s = q.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits))
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (sgn(x) < 0) s.insert(0, "-");
    return s;
}

/// Number of bits needed for |x|; 0 for zero.
inline std::size_t bit_length(const Integer& x) {
    return is_zero(x) ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

}  // namespace ffh

#endif  // FFH_ARITH_HPP
