#pragma once

// Numeric backends. `Exact` carries Gaussian-rational coefficients with
// norms represented as exact radical sums; `Float` carries complex<double>
// coefficients with point-valued norms.

#include <anline/exact.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace anline {

/// Norm value in the exact backend: a nonnegative radical sum.
class ExactNorm {
public:
    ExactNorm() = default;
    explicit ExactNorm(RadicalSum v) : value_(std::move(v)) {}
    explicit ExactNorm(const Rational& q) : value_(q) {}

    static ExactNorm modulus(const GaussianRational& z)
    {
        if (z.is_real()) return ExactNorm(Rational(abs(z.real())));
        if (sgn(z.real()) == 0) return ExactNorm(Rational(abs(z.imag())));
        return ExactNorm(RadicalSum::sqrt_of(z.norm2()));
    }

    const RadicalSum& exact() const { return value_; }
    RationalInterval enclosure(unsigned bits = 64) const { return value_.enclosure(bits); }
    /// Enclosure whose width does not exceed `width`.
    RationalInterval enclosure_within(const Rational& width) const
    {
        unsigned bits = 64;
        auto e = enclosure(bits);
        while (e.width() > width && bits < (1u << 16)) {
            bits *= 2;
            e = enclosure(bits);
        }
        return e;
    }
    /// Rational upper bound (used when a norm must feed a tail bound).
    Rational upper() const { return enclosure(64).hi; }
    double to_double() const { return value_.to_double(); }
    bool finite() const { return true; }

    ExactNorm& operator+=(const ExactNorm& o)
    {
        value_ += o.value_;
        return *this;
    }
    friend ExactNorm operator+(ExactNorm a, const ExactNorm& b) { return a += b; }
    friend ExactNorm operator*(const ExactNorm& a, const ExactNorm& b) { return ExactNorm(a.value_ * b.value_); }
    friend ExactNorm operator*(const Rational& s, const ExactNorm& a) { return ExactNorm(a.value_ * s); }

    friend Certainty certify_le(const ExactNorm& a, const ExactNorm& b) { return anline::certify_le(a.value_, b.value_); }

    std::string str() const
    {
        auto e = enclosure(64);
        if (e.lo == e.hi) return e.lo.get_str();
        return "[" + to_decimal(e.lo, 15) + ", " + to_decimal(e.hi, 15) + "]";
    }

private:
    RadicalSum value_;
};

/// Norm value in the float backend; overflow is kept as a non-finite value
/// and reported through `finite()`.
class FloatNorm {
public:
    static constexpr double relative_tolerance = 1e-9;

    FloatNorm() = default;
    explicit FloatNorm(double v) : value_(v) {}

    static FloatNorm modulus(const std::complex<double>& z) { return FloatNorm(std::abs(z)); }

    double value() const { return value_; }
    double upper() const { return value_; }
    double to_double() const { return value_; }
    bool finite() const { return std::isfinite(value_); }

    FloatNorm& operator+=(const FloatNorm& o)
    {
        value_ += o.value_;
        return *this;
    }
    friend FloatNorm operator+(FloatNorm a, const FloatNorm& b) { return a += b; }
    friend FloatNorm operator*(const FloatNorm& a, const FloatNorm& b) { return FloatNorm(a.value_ * b.value_); }
    friend FloatNorm operator*(double s, const FloatNorm& a) { return FloatNorm(s * a.value_); }

    friend Certainty certify_le(const FloatNorm& a, const FloatNorm& b)
    {
        if (!a.finite() || !b.finite()) return Certainty::undecided;
        const double slack = relative_tolerance * std::max({std::abs(a.value_), std::abs(b.value_), 1e-300});
        return a.value_ <= b.value_ + slack ? Certainty::holds : Certainty::violated;
    }

    std::string str() const
    {
        if (!finite()) return "non-finite";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", value_);
        return buf;
    }

private:
    double value_ = 0.0;
};

struct Exact {
    using real_type = Rational;
    using scalar_type = GaussianRational;
    using norm_type = ExactNorm;
    static constexpr const char* name = "exact";

    static real_type real_from(const Rational& q) { return q; }
    static scalar_type scalar_from(const GaussianRational& z) { return z; }
    static bool is_zero(const scalar_type& z) { return z.is_zero(); }
    static real_type norm2(const scalar_type& z) { return z.norm2(); }
    static norm_type modulus(const scalar_type& z) { return ExactNorm::modulus(z); }
    static norm_type norm_of(const real_type& r) { return ExactNorm(r); }
    static real_type pow(const real_type& r, int n)
    {
        real_type out(1);
        real_type base = n >= 0 ? r : real_type(1 / r);
        for (int i = 0, m = n >= 0 ? n : -n; i < m; ++i) out *= base;
        return out;
    }
    static double to_double(const real_type& r) { return r.get_d(); }
    static std::string real_str(const real_type& r) { return r.get_str(); }
    static std::string scalar_str(const scalar_type& z) { return z.str(); }
};

struct Float {
    using real_type = double;
    using scalar_type = std::complex<double>;
    using norm_type = FloatNorm;
    static constexpr const char* name = "float";

    static real_type real_from(const Rational& q) { return q.get_d(); }
    static scalar_type scalar_from(const GaussianRational& z) { return {z.real().get_d(), z.imag().get_d()}; }
    static bool is_zero(const scalar_type& z) { return z == scalar_type(0.0, 0.0); }
    static real_type norm2(const scalar_type& z) { return std::norm(z); }
    static norm_type modulus(const scalar_type& z) { return FloatNorm::modulus(z); }
    static norm_type norm_of(const real_type& r) { return FloatNorm(r); }
    static real_type pow(const real_type& r, int n) { return std::pow(r, n); }
    static double to_double(const real_type& r) { return r; }
    static std::string real_str(const real_type& r)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", r);
        return buf;
    }
    static std::string scalar_str(const scalar_type& z)
    {
        char buf[96];
        if (z.imag() == 0.0) {
            std::snprintf(buf, sizeof buf, "%.17g", z.real());
        } else {
            std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
        }
        return buf;
    }
};

/// Certified modulus enclosure: lo <= |z| <= hi with hi - lo <= width.
inline RationalInterval modulus_enclosure(const GaussianRational& z, const Rational& width)
{
    return ExactNorm::modulus(z).enclosure_within(width);
}

template <class B>
concept Backend = requires {
    typename B::real_type;
    typename B::scalar_type;
    typename B::norm_type;
};

template <Backend B>
using NormValue = typename B::norm_type;

/// Larger of two norm values; ties and undecided comparisons keep `a`.
template <class N>
N norm_max(const N& a, const N& b)
{
    return certify_le(a, b) == Certainty::holds && certify_le(b, a) != Certainty::holds ? b : a;
}

} // namespace anline
