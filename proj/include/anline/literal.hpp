#pragma once

// Text formats shared by the CLI and fixtures:
//   coefficient   `a+bi` with rational (`-3/4`) or decimal (`0.25`) parts
//   series        `deg:coeff` pairs, e.g. `0:1 1:-1/2 -1:3i`, optionally
//                 followed by `key=value` parameters such as `r=2`
//   polynomial    either the pair format or an infix expression in T,
//                 e.g. `T^2 - (1+i)*T + 1/2`; `/` yields rational functions

#include <anline/polynomial.hpp>
#include <anline/series.hpp>

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace anline {

/// Malformed literal; `position` is the byte offset into the input.
struct parse_error : std::invalid_argument {
    parse_error(const std::string& what, std::size_t pos)
        : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos)
    {
    }
    std::size_t position;
};

namespace detail {

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
inline bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Cursor {
public:
    Cursor(std::string_view text, std::size_t base = 0) : s_(text), base_(base) {}

    void skip_ws()
    {
        while (i_ < s_.size() && is_space(s_[i_])) ++i_;
    }
    bool done()
    {
        skip_ws();
        return i_ >= s_.size();
    }
    char peek()
    {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    char peek_raw() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    bool accept(char c)
    {
        if (peek() == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::size_t pos() const { return base_ + i_; }
    std::size_t index() const { return i_; }
    void advance(std::size_t n = 1) { i_ += n; }
    std::string_view rest() const { return s_.substr(i_); }
    [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, pos()); }

    /// Unsigned rational or decimal: `12`, `3/4`, `0.125`, `.5`.
    std::optional<Rational> unsigned_number()
    {
        skip_ws();
        std::size_t start = i_;
        while (i_ < s_.size() && is_digit(s_[i_])) ++i_;
        std::string int_part(s_.substr(start, i_ - start));
        if (i_ < s_.size() && s_[i_] == '.') {
            ++i_;
            std::size_t fs = i_;
            while (i_ < s_.size() && is_digit(s_[i_])) ++i_;
            std::string frac(s_.substr(fs, i_ - fs));
            if (int_part.empty() && frac.empty()) {
                i_ = start;
                return std::nullopt;
            }
            mpz_class num(int_part.empty() ? "0" : int_part);
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            if (!frac.empty()) num = num * scale + mpz_class(frac);
            Rational q(num, scale);
            q.canonicalize();
            return q;
        }
        if (int_part.empty()) return std::nullopt;
        Rational q{mpz_class(int_part)};
        if (i_ + 1 < s_.size() && s_[i_] == '/' && is_digit(s_[i_ + 1])) {
            ++i_;
            std::size_t ds = i_;
            while (i_ < s_.size() && is_digit(s_[i_])) ++i_;
            mpz_class den(std::string(s_.substr(ds, i_ - ds)));
            if (sgn(den) == 0) {
                throw parse_error("zero denominator", base_ + ds);
            }
            q = Rational(q.get_num(), den);
            q.canonicalize();
        }
        return q;
    }

private:
    std::string_view s_;
    std::size_t base_;
    std::size_t i_ = 0;
};

// One signed real-or-imaginary part: `3/4`, `-2i`, `i`, `-0.5i`.
inline std::optional<GaussianRational> signed_part(Cursor& c, bool require_sign)
{
    c.skip_ws();
    std::size_t save = c.index();
    int sign = 1;
    char ch = c.peek_raw();
    if (ch == '+' || ch == '-') {
        sign = ch == '-' ? -1 : 1;
        c.advance();
    } else if (require_sign) {
        return std::nullopt;
    }
    auto num = c.unsigned_number();
    bool imag = false;
    if (c.peek_raw() == 'i') {
        imag = true;
        c.advance();
    }
    if (!num && !imag) {
        if (require_sign) {
            // rewind: the sign belongs to something else
            (void)save;
        }
        c.fail("expected a number");
    }
    Rational v = num.value_or(Rational(1)) * sign;
    return imag ? GaussianRational(Rational(0), v) : GaussianRational(v);
}

} // namespace detail

inline Rational parse_rational(std::string_view text)
{
    detail::Cursor c(text);
    int sign = 1;
    if (c.accept('-')) {
        sign = -1;
    } else {
        c.accept('+');
    }
    auto q = c.unsigned_number();
    if (!q) c.fail("expected a rational number");
    if (!c.done()) c.fail("unexpected trailing input");
    return *q * sign;
}

/// `a+bi`, `3i`, `-i`, `1/2-3/4i`, `0.5`.
inline GaussianRational parse_coefficient(std::string_view text, std::size_t base = 0)
{
    detail::Cursor c(text, base);
    auto first = detail::signed_part(c, false);
    GaussianRational z = *first;
    if (!c.done()) {
        auto second = detail::signed_part(c, true);
        if (!second) c.fail("expected '+' or '-'");
        if (first->is_real() == second->is_real()) c.fail("coefficient has two real or two imaginary parts");
        z += *second;
    }
    if (!c.done()) c.fail("unexpected trailing input in coefficient");
    return z;
}

/// Parsed series literal: terms plus free-form `key=value` parameters.
struct SeriesLiteral {
    std::map<int, GaussianRational> terms;
    std::map<std::string, std::string> params;

    std::optional<std::string> param(const std::string& key) const
    {
        auto it = params.find(key);
        if (it == params.end()) return std::nullopt;
        return it->second;
    }
    std::optional<Rational> rational_param(const std::string& key) const
    {
        auto v = param(key);
        if (!v) return std::nullopt;
        return parse_rational(*v);
    }
};

/// Whitespace-separated `deg:coeff` tokens and `key=value` tokens. Repeated
/// degrees accumulate.
inline SeriesLiteral parse_series_literal(std::string_view text)
{
    SeriesLiteral out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && detail::is_space(text[i])) ++i;
        if (i >= text.size()) break;
        std::size_t start = i;
        while (i < text.size() && !detail::is_space(text[i])) ++i;
        std::string_view tok = text.substr(start, i - start);
        auto eq = tok.find('=');
        if (eq != std::string_view::npos) {
            if (eq == 0) throw parse_error("empty parameter name", start);
            out.params[std::string(tok.substr(0, eq))] = std::string(tok.substr(eq + 1));
            continue;
        }
        auto colon = tok.find(':');
        if (colon == std::string_view::npos) throw parse_error("expected deg:coeff", start);
        std::string_view deg = tok.substr(0, colon);
        int d = 0;
        try {
            std::size_t used = 0;
            d = std::stoi(std::string(deg), &used);
            if (used != deg.size()) throw parse_error("bad degree", start);
        } catch (const std::logic_error&) {
            throw parse_error("bad degree '" + std::string(deg) + "'", start);
        }
        if (colon + 1 >= tok.size()) throw parse_error("missing coefficient", start + colon + 1);
        GaussianRational c = parse_coefficient(tok.substr(colon + 1), start + colon + 1);
        out.terms[d] += c;
    }
    return out;
}

/// Build a series from a literal; radius comes from `r=` unless overridden.
template <Backend B>
WeightedSeries<B> make_series(const SeriesLiteral& lit, std::optional<Rational> radius = std::nullopt,
                              int cap = default_degree_cap)
{
    Rational r = radius ? *radius : lit.rational_param("r").value_or(Rational(1));
    std::optional<typename B::real_type> tail;
    if (auto t = lit.rational_param("tail")) tail = B::real_from(*t);
    std::vector<typename B::scalar_type> c;
    int low = 0;
    if (!lit.terms.empty()) {
        low = lit.terms.begin()->first;
        int high = lit.terms.rbegin()->first;
        c.resize(static_cast<std::size_t>(high - low + 1));
        for (const auto& [d, v] : lit.terms) c[static_cast<std::size_t>(d - low)] = B::scalar_from(v);
    }
    return WeightedSeries<B>(low, std::move(c), B::real_from(r), tail, cap);
}

template <Backend B>
WeightedSeries<B> parse_series(std::string_view text, std::optional<Rational> radius = std::nullopt,
                               int cap = default_degree_cap)
{
    return make_series<B>(parse_series_literal(text), radius, cap);
}

/// Terms in descending degree, e.g. `1:1 0:1 -1:-1`; zero series is `0:0`.
inline std::string format_terms(const WeightedSeries<Exact>& s)
{
    auto t = s.trimmed();
    if (t.coefficients().empty()) return "0:0";
    std::string out;
    for (int n = t.high_degree(); n >= t.low_degree(); --n) {
        auto c = t.coefficient(n);
        if (c.is_zero()) continue;
        if (!out.empty()) out += ' ';
        out += std::to_string(n) + ":" + c.str();
    }
    return out;
}

inline std::string format_terms(const WeightedSeries<Float>& s)
{
    auto t = s.trimmed();
    if (t.coefficients().empty()) return "0:0";
    std::string out;
    for (int n = t.high_degree(); n >= t.low_degree(); --n) {
        auto c = t.coefficient(n);
        if (Float::is_zero(c)) continue;
        if (!out.empty()) out += ' ';
        out += std::to_string(n) + ":" + Float::scalar_str(c);
    }
    return out;
}

/// Full literal including radius and tail; round-trips exactly in the exact backend.
template <Backend B>
std::string format_series(const WeightedSeries<B>& s)
{
    std::string out = format_terms(s) + " r=" + B::real_str(s.radius());
    if (s.tail_bound()) out += " tail=" + B::real_str(*s.tail_bound());
    return out;
}

namespace detail {

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | power
// power  := atom ('^' integer)?
// atom   := number | number? 'i' | 'T' | '(' expr ')'
class ExprParser {
public:
    explicit ExprParser(std::string_view s, std::size_t base) : c_(s, base) {}

    RationalFunction parse()
    {
        auto v = expr();
        if (!c_.done()) c_.fail("unexpected trailing input in expression");
        return v;
    }

private:
    RationalFunction expr()
    {
        RationalFunction v = term();
        for (;;) {
            if (c_.accept('+')) {
                v = v + term();
            } else if (c_.accept('-')) {
                v = v - term();
            } else {
                return v;
            }
        }
    }
    RationalFunction term()
    {
        RationalFunction v = unary();
        for (;;) {
            if (c_.accept('*')) {
                v = v * unary();
            } else if (c_.peek() == '/') {
                std::size_t at = c_.pos();
                c_.advance();
                RationalFunction d = unary();
                if (d.is_zero()) throw parse_error("division by zero", at);
                v = v / d;
            } else if (starts_atom()) {
                v = v * power(); // implicit product, e.g. `2T` or `3i`
            } else {
                return v;
            }
        }
    }
    RationalFunction unary()
    {
        if (c_.accept('-')) return -unary();
        if (c_.accept('+')) return unary();
        return power();
    }
    bool starts_atom()
    {
        char ch = c_.peek();
        return ch == 'T' || ch == 'i' || ch == '(' || is_digit(ch) || ch == '.';
    }
    RationalFunction power()
    {
        RationalFunction base = atom();
        if (c_.accept('^')) {
            c_.skip_ws();
            bool neg = c_.accept('-');
            auto e = c_.unsigned_number();
            if (!e || e->get_den() != 1 || e->get_num() > 4096) c_.fail("expected a small integer exponent");
            long k = e->get_num().get_si();
            RationalFunction out(1);
            for (long j = 0; j < k; ++j) out = out * base;
            if (neg) {
                if (out.is_zero()) c_.fail("zero to a negative power");
                out = RationalFunction(1) / out;
            }
            return out;
        }
        return base;
    }
    RationalFunction atom()
    {
        char ch = c_.peek();
        if (ch == '(') {
            c_.advance();
            auto v = expr();
            c_.expect(')');
            return v;
        }
        if (ch == 'T') {
            c_.advance();
            return RationalFunction(Polynomial::T());
        }
        if (ch == 'i') {
            c_.advance();
            return RationalFunction(Polynomial(GaussianRational(Rational(0), Rational(1))));
        }
        auto q = c_.unsigned_number();
        if (!q) c_.fail("expected a number, T, i or '('");
        if (c_.peek_raw() == 'i') {
            c_.advance();
            return RationalFunction(Polynomial(GaussianRational(Rational(0), *q)));
        }
        return RationalFunction(Polynomial(GaussianRational(*q)));
    }

    Cursor c_;
};

} // namespace detail

/// Rational function from an infix expression or a `deg:coeff` literal
/// (negative degrees become denominators).
inline RationalFunction parse_rational_function(std::string_view text, std::size_t base = 0)
{
    if (text.find(':') != std::string_view::npos) {
        auto lit = parse_series_literal(text);
        if (!lit.params.empty()) throw parse_error("parameters are not allowed in a polynomial", base);
        int low = lit.terms.empty() ? 0 : std::min(0, lit.terms.begin()->first);
        std::vector<GaussianRational> c;
        for (const auto& [d, v] : lit.terms) {
            auto k = static_cast<std::size_t>(d - low);
            if (c.size() <= k) c.resize(k + 1);
            c[k] = v;
        }
        return {Polynomial(std::move(c)), Polynomial::monomial(-low)};
    }
    return detail::ExprParser(text, base).parse();
}

inline Polynomial parse_polynomial(std::string_view text, std::size_t base = 0)
{
    auto f = parse_rational_function(text, base);
    if (!f.is_polynomial()) throw parse_error("expected a polynomial, got " + f.str(), base);
    return exact_quotient(f.num(), f.den());
}

/// Split on a separator at parenthesis depth zero.
inline std::vector<std::string> split_top_level(std::string_view text, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : text) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    for (auto& s : out) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    }
    return out;
}

} // namespace anline
