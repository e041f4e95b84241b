#ifndef FFH_PARSE_HPP
#define FFH_PARSE_HPP

// Recursive-descent parser for polynomial literals such as
// `3*t^2 - 1/2*t + 4` or `X0^2 + t*X1^2`.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*        divisor must be a nonzero constant
//   unary := ('+' | '-') unary | power
//   power := atom ('^' integer)?
//   atom  := integer | 't' | 'X'<index> | '(' expr ')'

#include "ffh/mpoly.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace ffh {

struct SourceLocation {
    std::size_t line = 0;    // 1-based; 0 when the text is not part of a file
    std::size_t column = 0;  // 1-based
};

class ParseError : public Error {
public:
    ParseError(Errc code, const std::string& msg, SourceLocation loc)
        : Error(code, format(msg, loc)), loc_(loc), message_(msg) {}

    const SourceLocation& location() const { return loc_; }
    const std::string& message() const { return message_; }

private:
    static std::string format(const std::string& msg, SourceLocation loc) {
        if (loc.line == 0) return "column " + std::to_string(loc.column) + ": " + msg;
        return "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) + ": " + msg;
    }
    SourceLocation loc_;
    std::string message_;
};

namespace detail {

class LiteralParser {
public:
    LiteralParser(std::string_view text, std::size_t nvars, SourceLocation origin)
        : s_(text), nvars_(nvars), origin_(origin) {}

    MPoly parse() {
        skip_ws();
        if (pos_ == s_.size()) fail("empty expression");
        MPoly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
        throw ParseError(Errc::SyntaxError, msg, {origin_.line, origin_.column + pos});
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MPoly expr() {
        MPoly acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    MPoly term() {
        MPoly acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                skip_ws();
                const std::size_t at = pos_;
                MPoly div = unary();
                auto it = div.terms().begin();
                if (div.is_zero()) fail_at(at, "division by zero");
                if (div.terms().size() != 1 || total_degree(it->first) != 0 || !it->second.is_constant())
                    fail_at(at, "division is only allowed by a nonzero constant");
                Rational inv = 1 / it->second.lead();
                acc = UniPoly(inv) * acc;
            } else {
                return acc;
            }
        }
    }

    MPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MPoly power() {
        MPoly base = atom();
        if (accept('^')) {
            skip_ws();
            const std::size_t at = pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected a nonnegative integer exponent");
            Integer e = digits();
            if (e > 4096) fail_at(at, "exponent too large");
            return ffh::pow(base, static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    Integer digits() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    MPoly atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return MPoly::constant(nvars_, UniPoly(Rational(digits())));
        if (c == '(') {
            ++pos_;
            MPoly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (c == 't') {
            ++pos_;
            if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
                fail_at(pos_ - 1, "unknown identifier");
            return MPoly::constant(nvars_, UniPoly::var());
        }
        if (c == 'X') {
            const std::size_t at = pos_++;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail_at(at, "expected a coordinate index after 'X'");
            Integer idx = digits();
            if (idx >= nvars_)
                fail_at(at, "coordinate X" + idx.get_str() + " out of range (k = " +
                                (nvars_ == 0 ? std::string("none") : std::to_string(nvars_ - 1)) + ")");
            return MPoly::variable(nvars_, idx.get_ui());
        }
        if (std::isalpha(static_cast<unsigned char>(c))) fail("unknown identifier");
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t nvars_;
    SourceLocation origin_;
};

}  // namespace detail

/// Parses a polynomial in X0..X{nvars-1} and t. `origin` is the location of the
/// first character, used to anchor diagnostics.
inline MPoly parse_mpoly(std::string_view text, std::size_t nvars, SourceLocation origin = {0, 1}) {
    return detail::LiteralParser(text, nvars, origin).parse();
}

/// Parses a polynomial in t alone.
inline UniPoly parse_unipoly(std::string_view text, SourceLocation origin = {0, 1}) {
    MPoly p = parse_mpoly(text, 0, origin);
    return p.coeff(Exponents{});
}

}  // namespace ffh

#endif  // FFH_PARSE_HPP
