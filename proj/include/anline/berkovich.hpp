#pragma once

// Spectra of one-variable finitely presented C-algebras C[T]/(p): points are
// evaluation seminorms at the roots of p, localized with certified discs.

#include <anline/backend.hpp>
#include <anline/polynomial.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

namespace anline {

struct AlgebraDescriptor {
    std::vector<Polynomial> relations; // generators of the ideal; empty means C[T]

    /// Generator of the relation ideal (monic gcd, zero for the free algebra).
    Polynomial principal() const
    {
        Polynomial g;
        for (const auto& r : relations) g = gcd(g, r);
        return g;
    }
};

struct SpectrumPoint {
    GaussianRational center;
    Rational radius;        // the root lies in the closed disc |z - center| <= radius
    bool certified = false; // false when refinement ran out of budget

    std::complex<double> z() const { return Float::scalar_from(center); }

    std::string str() const
    {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.3g", center.real().get_d(), center.imag().get_d(),
                      radius.get_d());
        return buf;
    }
};

enum class SpectrumKind { all_of_C, empty, points };

struct Spectrum {
    SpectrumKind kind = SpectrumKind::points;
    std::vector<SpectrumPoint> points;

    void write(std::ostream& os) const
    {
        switch (kind) {
        case SpectrumKind::all_of_C: os << "all-of-C\n"; return;
        case SpectrumKind::empty: os << "empty\n"; return;
        case SpectrumKind::points:
            for (const auto& p : points) os << p.str() << '\n';
            return;
        }
    }
};

struct spectrum_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Rational dyadic_round(const Rational& q, unsigned bits)
{
    mpz_class scaled = q.get_num() << bits;
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
    Rational out(n, mpz_class(1) << bits);
    out.canonicalize();
    return out;
}

inline Rational modulus_hi(const GaussianRational& z, unsigned bits = 96) { return sqrt_enclosure(z.norm2(), bits).hi; }
inline Rational modulus_lo(const GaussianRational& z, unsigned bits = 96) { return sqrt_enclosure(z.norm2(), bits).lo; }

// Smallest power of two >= q (q > 0).
inline Rational power_of_two_above(const Rational& q)
{
    Rational p(1);
    while (p < q) p *= 2;
    while (p / 2 >= q) p /= 2;
    return p;
}

// Rouché on the Taylor expansion p(c + w) = sum c_k w^k: if
// |c_1| rho > |c_0| + sum_{k>=2} |c_k| rho^k there is exactly one root in |w| <= rho.
inline std::optional<Rational> rouche_radius(const Polynomial& p, const GaussianRational& center, const Rational& target)
{
    auto c = p.taylor_at(center);
    if (c.size() < 2) return std::nullopt;
    const Rational c1_lo = modulus_lo(c[1]);
    if (sgn(c1_lo) <= 0) return std::nullopt;
    const Rational c0_hi = modulus_hi(c[0]);
    Rational rho = power_of_two_above(Rational(std::max(Rational(2 * c0_hi / c1_lo), Rational(1, mpz_class(1) << 100))));
    for (int attempt = 0; attempt < 4 && rho <= target; ++attempt, rho *= 2) {
        Rational rhs = c0_hi;
        Rational pw = rho * rho;
        for (std::size_t k = 2; k < c.size(); ++k, pw *= rho) rhs += modulus_hi(c[k]) * pw;
        if (c1_lo * rho > rhs) return rho;
    }
    return std::nullopt;
}

inline std::vector<std::complex<double>> companion_roots(const Polynomial& monic)
{
    const int d = monic.degree();
    if (d == 1) return {-Float::scalar_from(monic.coefficient(0))};
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) m(i, d - 1) = -Float::scalar_from(monic.coefficient(i));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    if (es.info() != Eigen::Success) throw spectrum_error("companion eigenvalue computation failed");
    std::vector<std::complex<double>> out(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return out;
}

inline std::complex<double> newton_polish(const Polynomial& p, const Polynomial& dp, std::complex<double> z)
{
    for (int it = 0; it < 8; ++it) {
        auto v = p(z);
        auto d = dp(z);
        if (d == std::complex<double>(0.0, 0.0)) break;
        auto step = v / d;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        z -= step;
        if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

} // namespace detail

/// Certified roots of a squarefree polynomial of degree >= 1, one disc per
/// root, radius <= target, pairwise disjoint.
inline std::vector<SpectrumPoint> certified_roots(const Polynomial& squarefree, const Rational& target = Rational(1, 10000000000))
{
    const Polynomial p = squarefree.monic();
    const Polynomial dp = p.derivative();
    std::vector<SpectrumPoint> pts;
    for (auto z : detail::companion_roots(p)) {
        z = detail::newton_polish(p, dp, z);
        SpectrumPoint sp;
        sp.center = GaussianRational(Rational(z.real()), Rational(z.imag()));
        auto rho = detail::rouche_radius(p, sp.center, target);
        for (unsigned bits = 128; !rho && bits <= 1024; bits *= 2) {
            // exact Newton step, rounded to a dyadic grid to keep sizes bounded
            auto d = dp(sp.center);
            if (d.is_zero()) break;
            auto next = sp.center - p(sp.center) / d;
            sp.center = GaussianRational(detail::dyadic_round(next.real(), bits), detail::dyadic_round(next.imag(), bits));
            rho = detail::rouche_radius(p, sp.center, target);
        }
        sp.certified = rho.has_value();
        sp.radius = rho.value_or(target);
        pts.push_back(std::move(sp));
    }
    // disjoint discs, each holding exactly one root, account for all deg p roots
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Rational sum = pts[i].radius + pts[j].radius;
            if ((pts[i].center - pts[j].center).norm2() <= sum * sum) {
                pts[i].certified = false;
                pts[j].certified = false;
            }
        }
    }
    std::sort(pts.begin(), pts.end(), [](const SpectrumPoint& a, const SpectrumPoint& b) {
        if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
        return a.center.imag() < b.center.imag();
    });
    return pts;
}

/// M(C[T]/I) as the zero set of the ideal generator; multiplicities collapse.
inline Spectrum gelfand_points(const AlgebraDescriptor& A)
{
    for (const auto& r : A.relations) {
        if (r.is_zero()) throw spectrum_error("relations must be nonzero polynomials");
    }
    Polynomial g = A.principal();
    if (g.is_zero()) return {SpectrumKind::all_of_C, {}};
    if (g.degree() == 0) return {SpectrumKind::empty, {}};
    return {SpectrumKind::points, certified_roots(squarefree_part(g))};
}

/// Evaluation seminorm |f(z)| at an exact point.
inline ExactNorm evaluation_seminorm(const Polynomial& f, const GaussianRational& z) { return ExactNorm::modulus(f(z)); }

struct AxiomViolation {
    int axiom = 0; // 1..4, numbered as in the seminorm definition
    std::size_t a = 0;
    std::size_t b = 0; // second sample index where relevant
    std::string detail;
};

struct AxiomReport {
    std::size_t checked_products = 0;
    std::size_t checked_sums = 0;
    std::vector<AxiomViolation> violations;

    bool pass() const { return violations.empty(); }
};

/// Check a candidate seminorm given on a finite sample. Products and sums are
/// only tested when they land in the sample. `bound`, when given, is the
/// Banach norm for axiom (2). N is ExactNorm or FloatNorm.
template <class N>
AxiomReport seminorm_axiom_check(const std::vector<Polynomial>& sample, const std::vector<N>& values,
                                 const std::function<N(const Polynomial&)>& bound = {})
{
    if (sample.size() != values.size()) throw std::invalid_argument("sample and value lists differ in length");
    AxiomReport rep;
    auto equal = [](const N& x, const N& y) {
        return certify_le(x, y) == Certainty::holds && certify_le(y, x) == Certainty::holds;
    };
    auto find = [&](const Polynomial& p) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k < sample.size(); ++k) {
            if (sample[k] == p) return k;
        }
        return std::nullopt;
    };
    const N one = [] {
        if constexpr (std::is_same_v<N, ExactNorm>) {
            return N(Rational(1));
        } else {
            return N(1.0);
        }
    }();
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (sample[i].is_zero() && !equal(values[i], N{})) rep.violations.push_back({1, i, i, "|0| != 0"});
        if (sample[i] == Polynomial(1) && !equal(values[i], one)) {
            rep.violations.push_back({1, i, i, "|1| != 1"});
        }
        if (bound && certify_le(values[i], bound(sample[i])) != Certainty::holds) {
            rep.violations.push_back({2, i, i, "value exceeds the Banach norm"});
        }
    }
    for (std::size_t i = 0; i < sample.size(); ++i) {
        for (std::size_t j = i; j < sample.size(); ++j) {
            if (auto k = find(sample[i] * sample[j])) {
                ++rep.checked_products;
                if (!equal(values[*k], values[i] * values[j])) {
                    rep.violations.push_back({3, i, j, "|ab| = " + values[*k].str() + " but |a||b| = " +
                                                           (values[i] * values[j]).str()});
                }
            }
            if (auto k = find(sample[i] + sample[j])) {
                ++rep.checked_sums;
                if (certify_le(values[*k], values[i] + values[j]) != Certainty::holds) {
                    rep.violations.push_back({4, i, j, "|a+b| = " + values[*k].str() + " exceeds |a|+|b| = " +
                                                           (values[i] + values[j]).str()});
                }
            }
        }
    }
    return rep;
}

/// R(f_1..f_n / g) = { x : |f_i(x)| <= |g(x)| for all i }.
class RationalSubsetSpec {
public:
    RationalSubsetSpec(std::vector<Polynomial> numerators, Polynomial denominator)
        : f_(std::move(numerators)), g_(std::move(denominator))
    {
        if (f_.empty()) throw spectrum_error("rational subset needs at least one numerator");
        Polynomial h = g_;
        for (const auto& f : f_) h = gcd(h, f);
        if (h.is_zero() || h.degree() != 0) {
            throw spectrum_error("numerators and denominator do not generate the unit ideal (gcd " + h.str() + ")");
        }
    }

    const std::vector<Polynomial>& numerators() const { return f_; }
    const Polynomial& denominator() const { return g_; }

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < f_.size(); ++i) s += (i ? ", " : "") + f_[i].str();
        return s + " ; " + g_.str() + ")";
    }

private:
    std::vector<Polynomial> f_;
    Polynomial g_;
};

/// Exact comparison of squared moduli at the point's center.
inline bool rational_membership(const GaussianRational& z, const RationalSubsetSpec& R)
{
    const Rational g2 = R.denominator()(z).norm2();
    for (const auto& f : R.numerators()) {
        if (f(z).norm2() > g2) return false;
    }
    return true;
}

inline bool rational_membership(const SpectrumPoint& x, const RationalSubsetSpec& R)
{
    return rational_membership(x.center, R);
}

} // namespace anline
