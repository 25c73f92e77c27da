#pragma once

// Text form of differential polynomials.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' INT)?
//   atom   := INT ('/' INT)? | deriv | '(' expr ')'
//   deriv  := NAME ('_[' NAME (',' NAME)* ']' | "'"*)
//
// Primes are accepted only with a single derivation. Printing is
// canonical: terms from the ranking-lex greatest down, no whitespace.

#include "rittkit/ranking.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rittkit {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what), line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

inline std::string to_string(const Derivative& v, const Context& ctx)
{
    std::string s = ctx.indeterminates().at(v.indet);
    if (v.order() == 0) return s;
    if (ctx.m() == 1) return s + std::string(v.op[0], '\'');
    s += "_[";
    bool first = true;
    for (std::size_t k = 0; k < v.op.size(); ++k) {
        for (std::uint32_t i = 0; i < v.op[k]; ++i) {
            if (!first) s += ',';
            s += ctx.derivations()[k];
            first = false;
        }
    }
    return s + "]";
}

inline std::string to_string(const Monomial& mono, const Context& ctx, const Ranking& R)
{
    auto f = mono.factors();
    std::sort(f.begin(), f.end(), [&](const auto& a, const auto& b) { return R.less(b.first, a.first); });
    std::string s;
    for (const auto& [v, e] : f) {
        if (!s.empty()) s += '*';
        s += to_string(v, ctx);
        if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
}

inline std::string to_string(const DiffPoly& f, const Context& ctx, const Ranking& R = Ranking::orderly())
{
    if (f.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [mono, c] : sorted_terms(f, R)) {
        Rational a = abs(c);
        if (c < 0) s += '-';
        else if (!first) s += '+';
        if (mono.is_one()) s += to_string(a);
        else {
            if (a != 1) s += to_string(a) + '*';
            s += to_string(mono, ctx, R);
        }
        first = false;
    }
    return s;
}

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view text, const Context& ctx) : text_(text), ctx_(ctx) {}

    DiffPoly parse()
    {
        skip_ws();
        if (at_end()) fail("empty expression");
        DiffPoly p = expr();
        skip_ws();
        if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

    [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const
    {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg, line, col);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    DiffPoly expr()
    {
        DiffPoly acc = term();
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    DiffPoly term()
    {
        DiffPoly acc = unary();
        while (accept('*')) acc *= unary();
        return acc;
    }

    DiffPoly unary()
    {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    DiffPoly power()
    {
        DiffPoly base = atom();
        if (accept('^')) {
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be a nonnegative integer");
            auto start = pos_;
            Integer e = integer();
            if (e > 4096) fail_at(start, "exponent too large");
            return pow(base, static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    Integer integer()
    {
        auto start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    std::string name()
    {
        auto start = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    DiffPoly atom()
    {
        skip_ws();
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = integer();
            if (peek() == '/') {
                ++pos_;
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
                auto at = pos_;
                Integer den = integer();
                if (den == 0) fail_at(at, "zero denominator");
                return DiffPoly(make_rational(num, den));
            }
            return DiffPoly(Rational(num));
        }
        if (c == '(') {
            ++pos_;
            DiffPoly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return derivative();
        if (at_end()) fail("unexpected end of expression");
        fail(std::string("unexpected '") + c + "'");
    }

    DiffPoly derivative()
    {
        auto start = pos_;
        std::string id = name();
        auto j = ctx_.indeterminate_index(id);
        if (!j) fail_at(start, "undeclared indeterminate '" + id + "'");
        Derivative v = Derivative::base(ctx_.m(), static_cast<std::uint32_t>(*j));
        if (peek() == '_' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '[') {
            pos_ += 2;
            for (;;) {
                skip_ws();
                auto at = pos_;
                std::string d = name();
                if (d.empty()) fail("expected a derivation name");
                auto k = ctx_.derivation_index(d);
                if (!k) fail_at(at, "undeclared derivation '" + d + "'");
                v = v.derive(*k);
                if (accept(',')) continue;
                if (accept(']')) break;
                fail("expected ',' or ']'");
            }
        } else if (peek() == '\'') {
            if (ctx_.m() != 1) fail("prime shorthand requires exactly one derivation");
            while (peek() == '\'') {
                ++pos_;
                v = v.derive(0);
            }
        }
        return DiffPoly::variable(v);
    }

    std::string_view text_;
    const Context& ctx_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Throws ParseError with 1-based line and column.
inline DiffPoly parse_poly(std::string_view text, const Context& ctx)
{
    return detail::ExprParser(text, ctx).parse();
}

} // namespace rittkit
