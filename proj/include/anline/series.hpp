#pragma once

// Truncated Laurent series with a weight radius and an optional certified
// tail bound, generic over the numeric backend.

#include <anline/backend.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace anline {

struct series_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A product or construction needed degrees beyond the cap and no tail
/// bound was available to absorb them.
struct degree_cap_exceeded : series_error {
    using series_error::series_error;
};

struct radius_mismatch : series_error {
    using series_error::series_error;
};

struct evaluation_domain_error : series_error {
    using series_error::series_error;
};

inline constexpr int default_degree_cap = 256;

template <Backend B>
class WeightedSeries {
public:
    using real_type = typename B::real_type;
    using scalar_type = typename B::scalar_type;

    explicit WeightedSeries(real_type radius, int cap = default_degree_cap) : radius_(std::move(radius)), cap_(cap)
    {
        check_radius();
    }

    WeightedSeries(int low, std::vector<scalar_type> coeffs, real_type radius,
                   std::optional<real_type> tail = std::nullopt, int cap = default_degree_cap)
        : low_(low), coeffs_(std::move(coeffs)), radius_(std::move(radius)), tail_(std::move(tail)), cap_(cap)
    {
        check_radius();
        if (tail_ && *tail_ < 0) {
            throw std::invalid_argument("tail bound must be nonnegative");
        }
        if (cap_ < 0) {
            throw std::invalid_argument("degree cap must be nonnegative");
        }
        if (!coeffs_.empty() && (low_ < -cap_ || high_degree() > cap_)) {
            // trailing/leading zeros beyond the cap are harmless
            trim_in_place();
            if (!coeffs_.empty() && (low_ < -cap_ || high_degree() > cap_)) {
                throw degree_cap_exceeded("series support exceeds degree cap " + std::to_string(cap_));
            }
        }
    }

    static WeightedSeries monomial(int degree, scalar_type c, real_type radius, int cap = default_degree_cap)
    {
        return WeightedSeries(degree, {std::move(c)}, std::move(radius), std::nullopt, cap);
    }

    int low_degree() const { return low_; }
    int high_degree() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<scalar_type>& coefficients() const { return coeffs_; }
    const real_type& radius() const { return radius_; }
    const std::optional<real_type>& tail_bound() const { return tail_; }
    int cap() const { return cap_; }

    scalar_type coefficient(int n) const
    {
        if (n < low_ || n > high_degree()) return scalar_type{};
        return coeffs_[static_cast<std::size_t>(n - low_)];
    }

    /// True when all stored coefficients are zero (the tail may still be nonzero).
    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const scalar_type& c) { return B::is_zero(c); });
    }
    bool is_polynomial() const { return !tail_.has_value(); }

    /// Lowest and highest degrees carrying a nonzero coefficient.
    std::optional<std::pair<int, int>> support() const
    {
        auto t = trimmed();
        if (t.coeffs_.empty()) return std::nullopt;
        return std::pair{t.low_, t.high_degree()};
    }
    bool support_nonnegative() const
    {
        auto s = support();
        return !s || s->first >= 0;
    }
    bool support_nonpositive() const
    {
        auto s = support();
        return !s || s->second <= 0;
    }

    /// Drop leading and trailing zero coefficients. Idempotent, norm-preserving.
    WeightedSeries trimmed() const
    {
        WeightedSeries out = *this;
        out.trim_in_place();
        return out;
    }

    WeightedSeries with_radius(real_type r) const
    {
        WeightedSeries out = *this;
        out.radius_ = std::move(r);
        out.check_radius();
        return out;
    }
    WeightedSeries with_tail(std::optional<real_type> t) const
    {
        WeightedSeries out = *this;
        out.tail_ = std::move(t);
        return out;
    }
    WeightedSeries with_cap(int cap) const
    {
        return WeightedSeries(low_, coeffs_, radius_, tail_, cap);
    }

    /// Restriction to degrees in [lo, hi]; the tail bound is kept.
    WeightedSeries restricted(int lo, int hi) const
    {
        std::vector<scalar_type> c;
        int start = std::max(lo, low_);
        for (int n = start; n <= std::min(hi, high_degree()); ++n) c.push_back(coefficient(n));
        const int new_low = c.empty() ? 0 : start;
        return WeightedSeries(new_low, std::move(c), radius_, tail_, cap_);
    }

    WeightedSeries operator-() const
    {
        WeightedSeries out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }

    WeightedSeries scaled(const scalar_type& lambda) const
    {
        WeightedSeries out = *this;
        for (auto& c : out.coeffs_) c *= lambda;
        if (out.tail_) out.tail_ = *out.tail_ * modulus_upper(lambda);
        return out;
    }

    /// Multiplication by T^k.
    WeightedSeries shifted(int k) const
    {
        WeightedSeries out = *this;
        out.low_ += k;
        if (!out.coeffs_.empty() && (out.low_ < -cap_ || out.high_degree() > cap_)) {
            out.trim_in_place();
            if (!out.coeffs_.empty() && (out.low_ < -cap_ || out.high_degree() > cap_)) {
                throw degree_cap_exceeded("shift exceeds degree cap " + std::to_string(cap_));
            }
        }
        return out;
    }

    /// Coefficientwise equality of the stored parts (after trimming) and tails.
    friend bool operator==(const WeightedSeries& a, const WeightedSeries& b)
    {
        auto ta = a.trimmed();
        auto tb = b.trimmed();
        return ta.low_ == tb.low_ && ta.coeffs_ == tb.coeffs_ && ta.radius_ == tb.radius_ && ta.tail_ == tb.tail_;
    }

    /// Same stored coefficients, ignoring radius and tail.
    bool same_coefficients(const WeightedSeries& o) const
    {
        auto ta = trimmed();
        auto tb = o.trimmed();
        return ta.coeffs_ == tb.coeffs_ && (ta.coeffs_.empty() || ta.low_ == tb.low_);
    }

    static real_type modulus_upper(const scalar_type& z)
    {
        if constexpr (std::is_same_v<real_type, double>) {
            return std::abs(z);
        } else {
            return B::modulus(z).upper();
        }
    }

private:
    void check_radius() const
    {
        if (!(radius_ > 0)) throw std::invalid_argument("radius must be positive");
    }

    void trim_in_place()
    {
        std::size_t first = 0;
        while (first < coeffs_.size() && B::is_zero(coeffs_[first])) ++first;
        if (first == coeffs_.size()) {
            coeffs_.clear();
            low_ = 0;
            return;
        }
        std::size_t last = coeffs_.size();
        while (B::is_zero(coeffs_[last - 1])) --last;
        coeffs_ = std::vector<scalar_type>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                           coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
        low_ += static_cast<int>(first);
    }

    int low_ = 0;
    std::vector<scalar_type> coeffs_;
    real_type radius_;
    std::optional<real_type> tail_;
    int cap_ = default_degree_cap;
};

/// sum_n |a_n| r^n over the stored coefficients, plus the tail bound.
template <Backend B>
NormValue<B> weighted_norm(const WeightedSeries<B>& s, const typename B::real_type& r)
{
    using real_type = typename B::real_type;
    const int low = s.low_degree();
    const auto& c = s.coefficients();
    if constexpr (std::is_same_v<real_type, double>) {
        double acc = 0.0;
        double w = std::pow(r, low);
        for (const auto& a : c) {
            acc += std::abs(a) * w;
            w *= r;
        }
        if (s.tail_bound()) acc += *s.tail_bound();
        return FloatNorm(acc);
    } else {
        real_type w = B::pow(r, low);
        RadicalSum acc;
        for (const auto& a : c) {
            if (!a.is_zero()) acc += B::modulus(a).exact() * w;
            w *= r;
        }
        if (s.tail_bound()) acc += RadicalSum(*s.tail_bound());
        return ExactNorm(std::move(acc));
    }
}

template <Backend B>
NormValue<B> weighted_norm(const WeightedSeries<B>& s)
{
    return weighted_norm(s, s.radius());
}

namespace detail {

enum class SupportSide { none, nonnegative, nonpositive, mixed };

template <Backend B>
SupportSide support_side(const WeightedSeries<B>& s)
{
    auto sup = s.support();
    if (!sup) return SupportSide::none;
    if (sup->first >= 0) return SupportSide::nonnegative;
    if (sup->second <= 0) return SupportSide::nonpositive;
    return SupportSide::mixed;
}

// Common radius for two operands. For support in degrees >= 0 the weighted
// norm is monotone increasing in r, so the smaller radius keeps both tail
// bounds valid; for support <= 0 the larger one does.
template <Backend B>
typename B::real_type common_radius(const WeightedSeries<B>& a, const WeightedSeries<B>& b)
{
    if (a.radius() == b.radius()) return a.radius();
    auto sa = support_side(a);
    auto sb = support_side(b);
    auto merge = [](SupportSide x, SupportSide y) {
        if (x == SupportSide::none) return y;
        if (y == SupportSide::none || x == y) return x;
        if (x == SupportSide::mixed || y == SupportSide::mixed) return SupportSide::mixed;
        return SupportSide::mixed;
    };
    switch (merge(sa, sb)) {
    case SupportSide::none:
    case SupportSide::nonnegative: return std::min(a.radius(), b.radius());
    case SupportSide::nonpositive: return std::max(a.radius(), b.radius());
    case SupportSide::mixed: break;
    }
    throw radius_mismatch("no common radius for two-sided operands with radii " + B::real_str(a.radius()) + " and " +
                          B::real_str(b.radius()));
}

template <Backend B>
std::optional<typename B::real_type> add_tails(const WeightedSeries<B>& a, const WeightedSeries<B>& b)
{
    if (!a.tail_bound() && !b.tail_bound()) return std::nullopt;
    typename B::real_type t(0);
    if (a.tail_bound()) t += *a.tail_bound();
    if (b.tail_bound()) t += *b.tail_bound();
    return t;
}

} // namespace detail

template <Backend B>
WeightedSeries<B> add(const WeightedSeries<B>& a, const WeightedSeries<B>& b)
{
    auto r = detail::common_radius(a, b);
    const int cap = std::min(a.cap(), b.cap());
    if (a.coefficients().empty() && b.coefficients().empty()) {
        return WeightedSeries<B>(0, {}, r, detail::add_tails(a, b), cap);
    }
    int lo, hi;
    if (a.coefficients().empty()) {
        lo = b.low_degree();
        hi = b.high_degree();
    } else if (b.coefficients().empty()) {
        lo = a.low_degree();
        hi = a.high_degree();
    } else {
        lo = std::min(a.low_degree(), b.low_degree());
        hi = std::max(a.high_degree(), b.high_degree());
    }
    std::vector<typename B::scalar_type> c(static_cast<std::size_t>(hi - lo + 1));
    for (int n = lo; n <= hi; ++n) {
        c[static_cast<std::size_t>(n - lo)] = a.coefficient(n) + b.coefficient(n);
    }
    return WeightedSeries<B>(lo, std::move(c), r, detail::add_tails(a, b), cap);
}

template <Backend B>
WeightedSeries<B> operator+(const WeightedSeries<B>& a, const WeightedSeries<B>& b)
{
    return add(a, b);
}

template <Backend B>
WeightedSeries<B> operator-(const WeightedSeries<B>& a, const WeightedSeries<B>& b)
{
    return add(a, -b);
}

/// Cauchy product. Degrees outside [-cap, cap] are dropped and their weighted
/// mass is folded into the tail bound; this requires tail tracking (a tail
/// bound on at least one operand), otherwise `degree_cap_exceeded` is thrown.
template <Backend B>
WeightedSeries<B> mul(const WeightedSeries<B>& a, const WeightedSeries<B>& b)
{
    using real_type = typename B::real_type;
    using scalar_type = typename B::scalar_type;
    auto r = detail::common_radius(a, b);
    const int cap = std::min(a.cap(), b.cap());
    const bool tracking = a.tail_bound() || b.tail_bound();

    std::optional<real_type> tail;
    if (tracking) {
        // (a + ta)(b + tb) - ab is bounded by |a| tb + ta |b| + ta tb
        real_type ta = a.tail_bound().value_or(real_type(0));
        real_type tb = b.tail_bound().value_or(real_type(0));
        real_type na = weighted_norm(a.with_tail(std::nullopt), r).upper();
        real_type nb = weighted_norm(b.with_tail(std::nullopt), r).upper();
        tail = real_type(na * tb + ta * nb + ta * tb);
    }
    if (a.coefficients().empty() || b.coefficients().empty()) {
        return WeightedSeries<B>(0, {}, r, tail, cap);
    }

    const int lo = a.low_degree() + b.low_degree();
    const int hi = a.high_degree() + b.high_degree();
    const auto& ca = a.coefficients();
    const auto& cb = b.coefficients();
    std::vector<scalar_type> c(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (B::is_zero(ca[i])) continue;
        for (std::size_t j = 0; j < cb.size(); ++j) {
            c[i + j] += ca[i] * cb[j];
        }
    }

    const int keep_lo = std::max(lo, -cap);
    const int keep_hi = std::min(hi, cap);
    if (keep_lo == lo && keep_hi == hi) {
        return WeightedSeries<B>(lo, std::move(c), r, tail, cap);
    }
    WeightedSeries<B> full(lo, c, r, std::nullopt, std::max({cap, -lo, hi}));
    WeightedSeries<B> omitted_low = full.restricted(lo, keep_lo - 1);
    WeightedSeries<B> omitted_high = full.restricted(keep_hi + 1, hi);
    if (omitted_low.is_zero() && omitted_high.is_zero()) {
        return full.restricted(keep_lo, keep_hi).with_tail(tail).with_cap(cap);
    }
    if (!tracking) {
        throw degree_cap_exceeded("product needs degrees [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                  "] beyond cap " + std::to_string(cap) + " without tail tracking");
    }
    *tail += real_type(weighted_norm(omitted_low, r).upper() + weighted_norm(omitted_high, r).upper());
    std::vector<scalar_type> kept;
    for (int n = keep_lo; n <= keep_hi; ++n) kept.push_back(c[static_cast<std::size_t>(n - lo)]);
    return WeightedSeries<B>(keep_lo, std::move(kept), r, tail, cap);
}

template <Backend B>
WeightedSeries<B> operator*(const WeightedSeries<B>& a, const WeightedSeries<B>& b)
{
    return mul(a, b);
}

/// Horner evaluation of the stored part. Series with a tail bound are only
/// evaluated where every stored degree satisfies |z|^n <= r^n, which is where
/// |s(z)| <= weighted_norm(s) holds.
template <Backend B>
typename B::scalar_type eval(const WeightedSeries<B>& s, const typename B::scalar_type& z)
{
    using scalar_type = typename B::scalar_type;
    auto t = s.trimmed();
    if (t.coefficients().empty()) return scalar_type{};
    const bool zero = B::is_zero(z);
    if (t.low_degree() < 0 && zero) {
        throw evaluation_domain_error("Laurent series evaluated at 0");
    }
    if (!s.is_polynomial()) {
        const auto z2 = B::norm2(z);
        const auto r2 = s.radius() * s.radius();
        if (t.high_degree() > 0 && z2 > r2) {
            throw evaluation_domain_error("|z| exceeds the radius of a non-polynomial series");
        }
        if (t.low_degree() < 0 && z2 < r2) {
            throw evaluation_domain_error("|z| below the radius of a series with negative-degree tail");
        }
    }
    const auto& c = t.coefficients();
    scalar_type acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        acc = acc * z + c[i];
    }
    const int low = t.low_degree();
    if (low != 0) {
        scalar_type zk = low > 0 ? z : scalar_type(1) / z;
        for (int k = 0, m = low > 0 ? low : -low; k < m; ++k) acc = acc * zk;
    }
    return acc;
}

/// Coefficientwise conversion between backends (exact -> float rounds).
inline WeightedSeries<Float> to_float(const WeightedSeries<Exact>& s)
{
    std::vector<std::complex<double>> c;
    c.reserve(s.coefficients().size());
    for (const auto& a : s.coefficients()) c.push_back(Float::scalar_from(a));
    std::optional<double> tail;
    if (s.tail_bound()) tail = s.tail_bound()->get_d();
    return WeightedSeries<Float>(s.low_degree(), std::move(c), s.radius().get_d(), tail, s.cap());
}

} // namespace anline
