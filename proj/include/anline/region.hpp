#pragma once

// Regions of the complex line cut out by norm constraints |f| rel c, kept in
// disjunctive normal form, with certified pointwise membership.

#include <anline/literal.hpp>
#include <anline/polynomial.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace anline {

enum class Rel { le, lt, ge, gt };

inline const char* to_string(Rel r)
{
    switch (r) {
    case Rel::le: return "<=";
    case Rel::lt: return "<";
    case Rel::ge: return ">=";
    case Rel::gt: return ">";
    }
    return "?";
}

enum class Membership { in, out, undecided };

inline const char* to_string(Membership m)
{
    switch (m) {
    case Membership::in: return "in";
    case Membership::out: return "out";
    case Membership::undecided: return "undecided";
    }
    return "?";
}

struct region_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Polynomial shared between constraints, with a double copy for fast evaluation.
struct PolyData {
    explicit PolyData(Polynomial p) : exact(std::move(p)), text(exact.str())
    {
        for (const auto& c : exact.coefficients()) {
            coeffs.push_back(Float::scalar_from(c));
            abs_coeffs.push_back(std::abs(coeffs.back()));
        }
    }

    Polynomial exact;
    std::string text;
    std::vector<std::complex<double>> coeffs;
    std::vector<double> abs_coeffs;
};

class Constraint {
public:
    Constraint(Polynomial f, Rel rel, Rational c) : Constraint(std::make_shared<const PolyData>(std::move(f)), rel, std::move(c)) {}
    Constraint(std::shared_ptr<const PolyData> f, Rel rel, Rational c) : f_(std::move(f)), rel_(rel), c_(std::move(c))
    {
        c_.canonicalize();
        if (f_->exact.is_zero()) throw region_error("constraint polynomial must be nonzero");
        if (sgn(c_) <= 0) throw region_error("constraint bound must be positive");
        c_double_ = c_.get_d();
    }

    const Polynomial& f() const { return f_->exact; }
    const std::shared_ptr<const PolyData>& data() const { return f_; }
    Rel rel() const { return rel_; }
    const Rational& c() const { return c_; }
    double c_double() const { return c_double_; }

    /// Decide |f(z)| rel c from |f(z)|^2.
    bool holds_exact(const Rational& mod2) const
    {
        const Rational c2 = c_ * c_;
        switch (rel_) {
        case Rel::le: return mod2 <= c2;
        case Rel::lt: return mod2 < c2;
        case Rel::ge: return mod2 >= c2;
        case Rel::gt: return mod2 > c2;
        }
        return false;
    }

    std::string str() const { return "|" + f_->text + "| " + to_string(rel_) + " " + c_.get_str(); }

    friend bool operator<(const Constraint& a, const Constraint& b)
    {
        if (a.f_ != b.f_ && a.f_->text != b.f_->text) return a.f_->text < b.f_->text;
        if (a.rel_ != b.rel_) return a.rel_ < b.rel_;
        return a.c_ < b.c_;
    }
    friend bool operator==(const Constraint& a, const Constraint& b)
    {
        return (a.f_ == b.f_ || a.f_->text == b.f_->text) && a.rel_ == b.rel_ && a.c_ == b.c_;
    }

private:
    std::shared_ptr<const PolyData> f_;
    Rel rel_;
    Rational c_;
    double c_double_ = 0;
};

namespace detail {

// Subset test on sorted clauses.
inline bool clause_subset(const std::vector<Constraint>& a, const std::vector<Constraint>& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace detail

/// Finite union of finite intersections of constraints. No clauses is Empty;
/// a clause with no constraints is Full.
class RegionExpr {
public:
    using Clause = std::vector<Constraint>;

    RegionExpr() = default; // Empty
    explicit RegionExpr(std::vector<Clause> clauses) : clauses_(std::move(clauses)) { normalize(); }
    RegionExpr(Constraint c) : clauses_{{std::move(c)}} {}

    static RegionExpr empty() { return {}; }
    static RegionExpr full() { return RegionExpr(std::vector<Clause>{Clause{}}); }
    static RegionExpr atom(const Polynomial& f, Rel rel, const Rational& c) { return RegionExpr(Constraint(f, rel, c)); }
    static RegionExpr atom(const std::shared_ptr<const PolyData>& f, Rel rel, const Rational& c)
    {
        return RegionExpr(Constraint(f, rel, c));
    }

    const std::vector<Clause>& clauses() const { return clauses_; }
    bool is_empty() const { return clauses_.empty(); }
    bool is_full() const { return clauses_.size() == 1 && clauses_.front().empty(); }

    friend RegionExpr meet(const RegionExpr& a, const RegionExpr& b)
    {
        std::vector<Clause> out;
        out.reserve(a.clauses_.size() * b.clauses_.size());
        for (const auto& x : a.clauses_) {
            for (const auto& y : b.clauses_) {
                Clause c = x;
                c.insert(c.end(), y.begin(), y.end());
                out.push_back(std::move(c));
            }
        }
        return RegionExpr(std::move(out));
    }

    friend RegionExpr join(const RegionExpr& a, const RegionExpr& b)
    {
        std::vector<Clause> out = a.clauses_;
        out.insert(out.end(), b.clauses_.begin(), b.clauses_.end());
        return RegionExpr(std::move(out));
    }

    friend bool operator==(const RegionExpr& a, const RegionExpr& b) { return a.clauses_ == b.clauses_; }

    std::string str() const
    {
        if (is_empty()) return "Empty";
        if (is_full()) return "Full";
        std::string out;
        for (std::size_t i = 0; i < clauses_.size(); ++i) {
            if (i) out += " | ";
            const auto& cl = clauses_[i];
            const bool wrap = clauses_.size() > 1 && cl.size() > 1;
            if (wrap) out += "(";
            for (std::size_t j = 0; j < cl.size(); ++j) {
                if (j) out += " & ";
                out += cl[j].str();
            }
            if (wrap) out += ")";
        }
        return out;
    }

    /// Every polynomial used, deduplicated by identity.
    std::vector<std::shared_ptr<const PolyData>> polynomials() const
    {
        std::vector<std::shared_ptr<const PolyData>> out;
        for (const auto& cl : clauses_) {
            for (const auto& c : cl) {
                if (std::find(out.begin(), out.end(), c.data()) == out.end()) out.push_back(c.data());
            }
        }
        return out;
    }

private:
    // Sort and dedup inside clauses, drop absorbed clauses (a clause that
    // contains another clause is redundant), sort the remaining clauses.
    void normalize()
    {
        for (auto& cl : clauses_) {
            std::sort(cl.begin(), cl.end());
            cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
        }
        std::sort(clauses_.begin(), clauses_.end(), [](const Clause& a, const Clause& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
        });
        clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
        std::vector<Clause> kept;
        for (auto& cl : clauses_) {
            bool absorbed = false;
            for (const auto& k : kept) {
                if (detail::clause_subset(k, cl)) {
                    absorbed = true;
                    break;
                }
            }
            if (!absorbed) kept.push_back(std::move(cl));
        }
        std::sort(kept.begin(), kept.end(), [](const Clause& a, const Clause& b) {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
        });
        clauses_ = std::move(kept);
    }

    std::vector<Clause> clauses_;
};

/// |f(z)| for one polynomial at one point: float value with a rigorous error
/// bound, and the exact squared modulus on demand.
class PolyEvaluation {
public:
    PolyEvaluation() = default;
    PolyEvaluation(const PolyData* f, std::complex<double> z) : f_(f), z_(z)
    {
        constexpr double u = std::numeric_limits<double>::epsilon() / 2;
        std::complex<double> acc{};
        double mag = 0;
        const double az = std::abs(z);
        for (std::size_t i = f->coeffs.size(); i-- > 0;) {
            acc = acc * z + f->coeffs[i];
            mag = mag * az + f->abs_coeffs[i];
        }
        mod_ = std::abs(acc);
        // complex Horner plus coefficient rounding plus the final hypot
        const double n = static_cast<double>(f->coeffs.size());
        err_ = 16.0 * (n + 2.0) * u * mag * (1.0 + 1e-12) + 4.0 * u * mod_;
        if (!std::isfinite(mod_) || !std::isfinite(err_)) err_ = std::numeric_limits<double>::infinity();
    }

    double modulus() const { return mod_; }
    double error() const { return err_; }

    const Rational& exact_mod2() const
    {
        if (!exact_) {
            GaussianRational zq{Rational(z_.real()), Rational(z_.imag())};
            exact_ = std::make_shared<Rational>(f_->exact(zq).norm2());
        }
        return *exact_;
    }

    /// Membership of z in {|f| rel c}; undecided only when the float enclosure
    /// straddles c and the exact fallback is off.
    Membership decide(const Constraint& c, bool exact_fallback) const
    {
        constexpr double u = std::numeric_limits<double>::epsilon();
        const double cd = c.c_double();
        const double lo = mod_ - err_;
        const double hi = mod_ + err_;
        if (std::isfinite(err_)) {
            const bool above = lo > cd * (1 + 2 * u);
            const bool below = hi < cd * (1 - 2 * u);
            if (above || below) {
                switch (c.rel()) {
                case Rel::le:
                case Rel::lt: return below ? Membership::in : Membership::out;
                case Rel::ge:
                case Rel::gt: return above ? Membership::in : Membership::out;
                }
            }
        }
        if (!exact_fallback) return Membership::undecided;
        return c.holds_exact(exact_mod2()) ? Membership::in : Membership::out;
    }

private:
    const PolyData* f_ = nullptr;
    std::complex<double> z_{};
    double mod_ = 0;
    double err_ = 0;
    mutable std::shared_ptr<Rational> exact_;
};

/// Per-point evaluation cache keyed by polynomial identity.
class PointEvaluator {
public:
    PointEvaluator(std::complex<double> z, bool exact_fallback) : z_(z), exact_fallback_(exact_fallback) {}

    std::complex<double> point() const { return z_; }

    Membership member(const Constraint& c)
    {
        const PolyData* key = c.data().get();
        for (auto& [k, e] : cache_) {
            if (k == key) return e.decide(c, exact_fallback_);
        }
        cache_.emplace_back(key, PolyEvaluation(key, z_));
        return cache_.back().second.decide(c, exact_fallback_);
    }

    Membership member(const RegionExpr& R)
    {
        bool any_undecided = false;
        for (const auto& cl : R.clauses()) {
            Membership m = Membership::in;
            for (const auto& c : cl) {
                Membership x = member(c);
                if (x == Membership::out) {
                    m = Membership::out;
                    break;
                }
                if (x == Membership::undecided) m = Membership::undecided;
            }
            if (m == Membership::in) return Membership::in;
            if (m == Membership::undecided) any_undecided = true;
        }
        return any_undecided ? Membership::undecided : Membership::out;
    }

private:
    std::complex<double> z_;
    bool exact_fallback_;
    std::vector<std::pair<const PolyData*, PolyEvaluation>> cache_;
};

inline Membership member(const RegionExpr& R, std::complex<double> z, bool exact_fallback = true)
{
    PointEvaluator ev(z, exact_fallback);
    return ev.member(R);
}

/// Exact membership at a Gaussian-rational point.
inline bool member_exact(const RegionExpr& R, const GaussianRational& z)
{
    for (const auto& cl : R.clauses()) {
        bool all = true;
        for (const auto& c : cl) {
            if (!c.holds_exact(c.f()(z).norm2())) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

/// Region literal: `|f| <= c`, `<`, `>=`, `>`, `&` (meet), `|` (join),
/// parentheses, and the atoms `Full` and `Empty`.
inline RegionExpr parse_region(std::string_view text);

namespace detail {

class RegionParser {
public:
    explicit RegionParser(std::string_view s) : s_(s) {}

    RegionExpr parse()
    {
        auto r = disjunction();
        skip();
        if (i_ < s_.size()) throw parse_error("unexpected trailing input in region", i_);
        return r;
    }

private:
    void skip()
    {
        while (i_ < s_.size() && is_space(s_[i_])) ++i_;
    }
    bool accept(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    bool accept_word(std::string_view w)
    {
        skip();
        if (s_.substr(i_, w.size()) == w) {
            i_ += w.size();
            return true;
        }
        return false;
    }

    RegionExpr disjunction()
    {
        RegionExpr r = conjunction();
        while (accept('|')) r = join(r, conjunction());
        return r;
    }
    RegionExpr conjunction()
    {
        RegionExpr r = atom();
        while (accept('&')) r = meet(r, atom());
        return r;
    }
    RegionExpr atom()
    {
        skip();
        if (accept('(')) {
            RegionExpr r = disjunction();
            if (!accept(')')) throw parse_error("expected ')'", i_);
            return r;
        }
        if (accept_word("Full")) return RegionExpr::full();
        if (accept_word("Empty")) return RegionExpr::empty();
        if (!accept('|')) throw parse_error("expected '|f| rel c', '(' , Full or Empty", i_);
        const std::size_t start = i_;
        const std::size_t end = s_.find('|', start);
        if (end == std::string_view::npos) throw parse_error("unterminated |f|", start);
        Polynomial f = parse_polynomial(s_.substr(start, end - start), start);
        i_ = end + 1;
        skip();
        Rel rel;
        if (accept_word("<=")) {
            rel = Rel::le;
        } else if (accept_word(">=")) {
            rel = Rel::ge;
        } else if (accept('<')) {
            rel = Rel::lt;
        } else if (accept('>')) {
            rel = Rel::gt;
        } else {
            throw parse_error("expected <=, <, >= or >", i_);
        }
        skip();
        const std::size_t cstart = i_;
        while (i_ < s_.size() && (is_digit(s_[i_]) || s_[i_] == '/' || s_[i_] == '.')) ++i_;
        if (cstart == i_) throw parse_error("expected a positive rational bound", cstart);
        Rational c = parse_rational(s_.substr(cstart, i_ - cstart));
        if (f.is_zero()) throw parse_error("constraint polynomial must be nonzero", start);
        if (sgn(c) <= 0) throw parse_error("constraint bound must be positive", cstart);
        return RegionExpr::atom(f, rel, c);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

} // namespace detail

inline RegionExpr parse_region(std::string_view text) { return detail::RegionParser(text).parse(); }

} // namespace anline
