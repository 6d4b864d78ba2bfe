#pragma once

// Exact arithmetic primitives: rationals, Gaussian rationals, rational
// intervals and signed sums of square roots with certified sign decisions.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace anline {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

/// Exact Gaussian rational a + bi.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    GaussianRational(long re) : re_(re) {}

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    /// |z|^2, exact.
    Rational norm2() const { return re_ * re_ + im_ * im_; }
    GaussianRational conj() const { return {re_, -im_}; }

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o)
    {
        if (o.is_real()) {
            re_ *= o.re_;
            im_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o)
    {
        if (o.is_zero()) {
            throw std::domain_error("division by zero Gaussian rational");
        }
        if (o.is_real()) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        Rational d = o.norm2();
        *this *= o.conj();
        re_ /= d;
        im_ /= d;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Canonical text form `a+bi` with rational parts.
    std::string str() const
    {
        if (sgn(im_) == 0) {
            return re_.get_str();
        }
        std::string im_part;
        if (im_ == 1) {
            im_part = "i";
        } else if (im_ == -1) {
            im_part = "-i";
        } else {
            im_part = im_.get_str() + "i";
        }
        if (sgn(re_) == 0) {
            return im_part;
        }
        return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im_part;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

private:
    Rational re_{0};
    Rational im_{0};
};

/// Closed rational interval [lo, hi].
struct RationalInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    double mid_double() const { return Rational((lo + hi) / 2).get_d(); }
};

/// Integer square root bounds: returns s with s^2 <= n < (s+1)^2.
inline mpz_class isqrt(const mpz_class& n)
{
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    return s;
}

/// Certified enclosure of sqrt(q) for q >= 0 with width at most 2^-bits / den(q).
inline RationalInterval sqrt_enclosure(const Rational& q, unsigned bits = 64)
{
    if (sgn(q) < 0) {
        throw std::domain_error("sqrt of negative rational");
    }
    // sqrt(n/d) = sqrt(n*d)/d
    mpz_class nd = q.get_num() * q.get_den();
    if (mpz_perfect_square_p(nd.get_mpz_t()) != 0) {
        Rational v(isqrt(nd), q.get_den());
        v.canonicalize();
        return {v, v};
    }
    mpz_class scaled = nd << (2 * bits);
    mpz_class s = isqrt(scaled);
    mpz_class den = q.get_den() << bits;
    Rational lo(s, den);
    Rational hi(s + 1, den);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

/// Outcome of a certified comparison.
enum class Certainty { holds, violated, undecided };

inline const char* to_string(Certainty c)
{
    switch (c) {
    case Certainty::holds: return "holds";
    case Certainty::violated: return "violated";
    case Certainty::undecided: return "undecided";
    }
    return "?";
}

/// Exact real number of the form sum_j k_j * sqrt(N_j) with rational k_j and
/// positive integer radicands N_j. Identical radicands are merged on insert,
/// so sums sharing terms cancel exactly.
class RadicalSum {
public:
    RadicalSum() = default;
    explicit RadicalSum(const Rational& q) { add_term(q, mpz_class(1)); }

    /// sqrt(q) for q >= 0.
    static RadicalSum sqrt_of(const Rational& q)
    {
        if (sgn(q) < 0) {
            throw std::domain_error("sqrt of negative rational");
        }
        RadicalSum out;
        if (sgn(q) == 0) {
            return out;
        }
        mpz_class n = q.get_num() * q.get_den();
        Rational k(1, q.get_den());
        k.canonicalize();
        out.add_radical(std::move(k), std::move(n));
        return out;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<mpz_class, Rational>& terms() const { return terms_; }

    /// Exact rational value when every radicand is 1.
    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1); }
    Rational rational_value() const
    {
        if (terms_.empty()) return Rational(0);
        return terms_.begin()->second;
    }

    RadicalSum& operator+=(const RadicalSum& o)
    {
        for (const auto& [n, k] : o.terms_) {
            add_term(k, n);
        }
        return *this;
    }
    RadicalSum& operator-=(const RadicalSum& o)
    {
        for (const auto& [n, k] : o.terms_) {
            add_term(-k, n);
        }
        return *this;
    }
    RadicalSum operator-() const
    {
        RadicalSum out = *this;
        for (auto& [n, k] : out.terms_) {
            k = -k;
        }
        return out;
    }
    RadicalSum& operator*=(const Rational& s)
    {
        if (sgn(s) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [n, k] : terms_) {
            k *= s;
        }
        return *this;
    }
    friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
    friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }
    friend RadicalSum operator*(RadicalSum a, const Rational& s) { return a *= s; }
    friend RadicalSum operator*(const Rational& s, RadicalSum a) { return a *= s; }
    friend RadicalSum operator*(const RadicalSum& a, const RadicalSum& b)
    {
        RadicalSum out;
        for (const auto& [na, ka] : a.terms_) {
            for (const auto& [nb, kb] : b.terms_) {
                if (na == nb) {
                    out.add_term(Rational(ka * kb * na), mpz_class(1));
                } else {
                    out.add_radical(Rational(ka * kb), mpz_class(na * nb));
                }
            }
        }
        return out;
    }
    friend bool operator==(const RadicalSum& a, const RadicalSum& b) { return (a - b).sign() == 0; }

    /// Rational enclosure; each radical is bounded with `bits` binary digits.
    RationalInterval enclosure(unsigned bits = 64) const
    {
        Rational lo(0), hi(0);
        for (const auto& [n, k] : terms_) {
            if (n == 1) {
                lo += k;
                hi += k;
                continue;
            }
            mpz_class s = isqrt(mpz_class(n << (2 * bits)));
            Rational rlo(s, mpz_class(1) << bits);
            Rational rhi(s + 1, mpz_class(1) << bits);
            rlo.canonicalize();
            rhi.canonicalize();
            if (sgn(k) > 0) {
                lo += k * rlo;
                hi += k * rhi;
            } else {
                lo += k * rhi;
                hi += k * rlo;
            }
        }
        return {lo, hi};
    }

    double to_double() const { return enclosure(64).mid_double(); }

    /// Sign of the value: -1, 0, +1. Returns 2 when undecidable within the
    /// precision budget (which cannot happen for fully merged radicands).
    int sign() const
    {
        if (terms_.empty()) return 0;
        for (unsigned bits : {64u, 160u}) {
            auto e = enclosure(bits);
            if (sgn(e.lo) > 0) return 1;
            if (sgn(e.hi) < 0) return -1;
        }
        RadicalSum merged = merged_by_square_ratio();
        if (merged.terms_.empty()) return 0;
        if (merged.terms_.size() <= 3) return merged.small_sign();
        for (unsigned bits : {512u, 2048u, 8192u}) {
            auto e = merged.enclosure(bits);
            if (sgn(e.lo) > 0) return 1;
            if (sgn(e.hi) < 0) return -1;
        }
        return 2;
    }

    std::string str() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto& [n, k] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << k.get_str();
            if (n != 1) os << "*sqrt(" << n.get_str() << ")";
        }
        if (first) os << "0";
        return os.str();
    }

private:
    void add_term(const Rational& k, const mpz_class& n)
    {
        if (sgn(k) == 0) return;
        auto it = terms_.find(n);
        if (it == terms_.end()) {
            terms_.emplace(n, k);
            return;
        }
        it->second += k;
        if (sgn(it->second) == 0) {
            terms_.erase(it);
        }
    }

    // k*sqrt(n): pull out small square factors and perfect squares.
    void add_radical(Rational k, mpz_class n)
    {
        if (sgn(n) == 0 || sgn(k) == 0) return;
        if (mpz_perfect_square_p(n.get_mpz_t()) != 0) {
            k *= Rational(isqrt(n));
            add_term(k, mpz_class(1));
            return;
        }
        static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
        for (unsigned p : primes) {
            const unsigned long p2 = static_cast<unsigned long>(p) * p;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p2) != 0) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p2);
                k *= p;
            }
        }
        if (mpz_perfect_square_p(n.get_mpz_t()) != 0) {
            k *= Rational(isqrt(n));
            n = 1;
        }
        add_term(k, n);
    }

    // Merge radicands whose ratio is a rational square, which makes the
    // remaining square roots linearly independent over Q.
    RadicalSum merged_by_square_ratio() const
    {
        std::vector<std::pair<mpz_class, Rational>> v(terms_.begin(), terms_.end());
        std::vector<bool> used(v.size(), false);
        RadicalSum out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (used[i]) continue;
            Rational k = v[i].second;
            for (std::size_t j = i + 1; j < v.size(); ++j) {
                if (used[j]) continue;
                mpz_class prod = v[i].first * v[j].first;
                if (mpz_perfect_square_p(prod.get_mpz_t()) != 0) {
                    // sqrt(n_j) = sqrt(n_i n_j) / n_i * sqrt(n_i)
                    Rational ratio(isqrt(prod), v[i].first);
                    ratio.canonicalize();
                    k += v[j].second * ratio;
                    used[j] = true;
                }
            }
            out.add_term(k, v[i].first);
        }
        return out;
    }

    // Exact sign for at most three terms by repeated squaring.
    int small_sign() const
    {
        std::vector<RadicalSum> pos, neg;
        for (const auto& [n, k] : terms_) {
            RadicalSum t;
            t.terms_.emplace(n, sgn(k) > 0 ? k : Rational(-k));
            (sgn(k) > 0 ? pos : neg).push_back(std::move(t));
        }
        if (neg.empty()) return pos.empty() ? 0 : 1;
        if (pos.empty()) return -1;
        // compare sum(pos) with sum(neg); both sides nonnegative
        auto square = [](const std::vector<RadicalSum>& side) {
            RadicalSum s;
            for (const auto& t : side) s += t;
            return s * s;
        };
        RadicalSum diff = square(pos) - square(neg);
        if (diff.terms_.size() >= terms_.size() && diff.terms_.size() > 1) {
            return diff.sign();
        }
        if (diff.terms_.empty()) return 0;
        return diff.terms_.size() <= 3 ? diff.merged_by_square_ratio().small_sign() : diff.sign();
    }

    std::map<mpz_class, Rational> terms_;
};

/// Certified a <= b for exact radical sums.
inline Certainty certify_le(const RadicalSum& a, const RadicalSum& b)
{
    int s = (b - a).sign();
    if (s == 2) return Certainty::undecided;
    return s >= 0 ? Certainty::holds : Certainty::violated;
}

/// Decimal rendering of a rational with `digits` fractional digits (rounded toward zero).
inline std::string to_decimal(const Rational& q, int digits = 12)
{
    std::ostringstream os;
    mpz_class num = q.get_num();
    if (sgn(num) < 0) {
        os << '-';
        num = -num;
    }
    mpz_class ip = num / q.get_den();
    mpz_class rem = num % q.get_den();
    os << ip.get_str();
    if (digits > 0) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
        mpz_class frac = rem * scale / q.get_den();
        std::string f = frac.get_str();
        os << '.' << std::string(static_cast<std::size_t>(digits) - f.size(), '0') << f;
    }
    return os.str();
}

} // namespace anline
