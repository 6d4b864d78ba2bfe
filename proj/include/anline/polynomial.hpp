#pragma once

// Exact univariate polynomials over Q(i) and rational functions built on them.

#include <anline/exact.hpp>
#include <anline/series.hpp>

#include <algorithm>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace anline {

class Polynomial {
public:
    Polynomial() = default;
    /// coeffs[k] is the coefficient of T^k.
    explicit Polynomial(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(GaussianRational constant) : c_{std::move(constant)} { trim(); }
    Polynomial(long constant) : c_{GaussianRational(constant)} { trim(); }

    static Polynomial T() { return Polynomial({GaussianRational(0), GaussianRational(1)}); }
    static Polynomial monomial(int k, GaussianRational c = GaussianRational(1))
    {
        std::vector<GaussianRational> v(static_cast<std::size_t>(k) + 1);
        v.back() = std::move(c);
        return Polynomial(std::move(v));
    }
    /// T - z
    static Polynomial linear(const GaussianRational& z) { return Polynomial({-z, GaussianRational(1)}); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<GaussianRational>& coefficients() const { return c_; }
    GaussianRational coefficient(int k) const
    {
        if (k < 0 || k > degree()) return GaussianRational{};
        return c_[static_cast<std::size_t>(k)];
    }
    GaussianRational leading() const { return c_.empty() ? GaussianRational{} : c_.back(); }

    GaussianRational operator()(const GaussianRational& z) const
    {
        GaussianRational acc;
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc *= z;
            acc += c_[i];
        }
        return acc;
    }
    std::complex<double> operator()(const std::complex<double>& z) const
    {
        std::complex<double> acc{};
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + Float::scalar_from(c_[i]);
        return acc;
    }

    Polynomial operator-() const
    {
        Polynomial p = *this;
        for (auto& c : p.c_) c = -c;
        return p;
    }
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        std::vector<GaussianRational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i < a.c_.size()) v[i] += a.c_[i];
            if (i < b.c_.size()) v[i] += b.c_[i];
        }
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussianRational> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(v));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    Polynomial pow(int k) const
    {
        Polynomial out(1);
        for (int i = 0; i < k; ++i) out = out * *this;
        return out;
    }

    /// Euclidean division: returns (q, r) with a = q b + r, deg r < deg b.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b)
    {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        if (a.degree() < b.degree()) return {Polynomial{}, a};
        std::vector<GaussianRational> rem = a.c_;
        std::vector<GaussianRational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
        const GaussianRational inv_lead = GaussianRational(1) / b.leading();
        for (int k = a.degree() - b.degree(); k >= 0; --k) {
            GaussianRational t = rem[static_cast<std::size_t>(k + b.degree())] * inv_lead;
            if (t.is_zero()) continue;
            for (int j = 0; j <= b.degree(); ++j) {
                rem[static_cast<std::size_t>(k + j)] -= t * b.c_[static_cast<std::size_t>(j)];
            }
            q[static_cast<std::size_t>(k)] = std::move(t);
        }
        rem.resize(static_cast<std::size_t>(b.degree()));
        return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
    }

    Polynomial monic() const
    {
        if (is_zero()) return *this;
        Polynomial p = *this;
        const GaussianRational inv = GaussianRational(1) / leading();
        for (auto& c : p.c_) c *= inv;
        return p;
    }

    Polynomial derivative() const
    {
        if (c_.size() <= 1) return {};
        std::vector<GaussianRational> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * GaussianRational(static_cast<long>(i));
        return Polynomial(std::move(v));
    }

    /// Taylor coefficients at z: p(z + w) = sum_k out[k] w^k.
    std::vector<GaussianRational> taylor_at(const GaussianRational& z) const
    {
        std::vector<GaussianRational> a = c_;
        const std::size_t n = a.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = n - 1; j > i; --j) a[j - 1] += z * a[j];
        }
        return a;
    }

    /// Multiplicity of z as a root (0 when p(z) != 0). Undefined for p = 0.
    int order_at(const GaussianRational& z) const
    {
        if (is_zero()) throw std::domain_error("order of vanishing of the zero polynomial");
        Polynomial p = *this;
        int k = 0;
        const Polynomial lin = linear(z);
        while (p(z).is_zero()) {
            p = divmod(p, lin).first;
            ++k;
        }
        return k;
    }

    std::string str() const;

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<GaussianRational> c_;
};

/// Monic gcd (zero when both inputs vanish).
inline Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        auto r = Polynomial::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Extended gcd: returns (g, u, v) with u a + v b = g, g monic.
inline std::tuple<Polynomial, Polynomial, Polynomial> extended_gcd(const Polynomial& a, const Polynomial& b)
{
    Polynomial r0 = a, r1 = b;
    Polynomial s0(1), s1, t0, t1(1);
    while (!r1.is_zero()) {
        auto [q, r] = Polynomial::divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Polynomial s2 = s0 - q * s1;
        Polynomial t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const GaussianRational inv = GaussianRational(1) / r0.leading();
    Polynomial scale(inv);
    return {r0 * scale, s0 * scale, t0 * scale};
}

/// p / gcd(p, p'): the product of the distinct monic linear factors of p.
inline Polynomial squarefree_part(const Polynomial& p)
{
    if (p.is_constant()) return p.is_zero() ? p : Polynomial(1);
    return Polynomial::divmod(p, gcd(p, p.derivative())).first.monic();
}

inline Polynomial exact_quotient(const Polynomial& a, const Polynomial& b)
{
    auto [q, r] = Polynomial::divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
    return q;
}

inline std::string Polynomial::str() const
{
    if (c_.empty()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const auto& c = c_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        std::string cs = c.str();
        const bool compound = !c.is_real() && sgn(c.real()) != 0;
        std::string term;
        if (k == 0) {
            term = compound ? "(" + cs + ")" : cs;
        } else {
            std::string mono = k == 1 ? "T" : "T^" + std::to_string(k);
            if (c == GaussianRational(1)) {
                term = mono;
            } else if (c == GaussianRational(-1)) {
                term = "-" + mono;
            } else {
                term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
            }
        }
        if (!out.empty()) {
            if (term[0] == '-') {
                out += " - " + term.substr(1);
            } else {
                out += " + " + term;
            }
        } else {
            out = term;
        }
    }
    return out;
}

/// Conversion to a finite series at radius r (degrees >= 0, no tail).
template <Backend B>
WeightedSeries<B> to_series(const Polynomial& p, const typename B::real_type& r, int cap = default_degree_cap)
{
    std::vector<typename B::scalar_type> c;
    c.reserve(p.coefficients().size());
    for (const auto& a : p.coefficients()) c.push_back(B::scalar_from(a));
    return WeightedSeries<B>(0, std::move(c), r, std::nullopt, cap);
}

/// Conversion from a tail-free series with nonnegative support.
inline Polynomial to_polynomial(const WeightedSeries<Exact>& s)
{
    auto t = s.trimmed();
    if (t.coefficients().empty()) return {};
    if (t.low_degree() < 0) throw std::invalid_argument("series has negative-degree terms");
    std::vector<GaussianRational> c(static_cast<std::size_t>(t.high_degree()) + 1);
    for (int n = t.low_degree(); n <= t.high_degree(); ++n) c[static_cast<std::size_t>(n)] = t.coefficient(n);
    return Polynomial(std::move(c));
}

/// p / q in lowest terms with monic denominator.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}
    RationalFunction(long c) : num_(c), den_(1) {}
    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        normalize();
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
    {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b)
    {
        if (b.is_zero()) throw std::domain_error("division by zero rational function");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
    {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b)
    {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    RationalFunction operator-() const { return {-num_, den_}; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const
    {
        if (den_ == Polynomial(1)) return num_.str();
        auto wrap = [](const Polynomial& p) {
            std::string s = p.str();
            return (p.degree() >= 1 && p.coefficients().size() > 1 &&
                    std::count_if(p.coefficients().begin(), p.coefficients().end(),
                                  [](const GaussianRational& c) { return !c.is_zero(); }) > 1)
                       ? "(" + s + ")"
                       : s;
        };
        return wrap(num_) + "/" + wrap(den_);
    }

private:
    void normalize()
    {
        if (num_.is_zero()) {
            den_ = Polynomial(1);
            return;
        }
        Polynomial g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = exact_quotient(num_, g);
            den_ = exact_quotient(den_, g);
        }
        const GaussianRational lead = den_.leading();
        if (!(lead == GaussianRational(1))) {
            Polynomial inv(GaussianRational(1) / lead);
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Polynomial num_;
    Polynomial den_;
};

} // namespace anline
