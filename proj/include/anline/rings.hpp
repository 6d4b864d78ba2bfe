#pragma once

// The analytic rings of the closed disc, open disc and outer region, with the
// explicit maps between them: Laurent splitting, kernel recovery, division by
// (T - U), variable inversion and the residue pairing.

#include <anline/literal.hpp>
#include <anline/random.hpp>
#include <anline/series.hpp>

#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace anline {

enum class RingKind {
    overconvergent, // C{|T| <= 1}: support >= 0, witness radius > 1
    holomorphic,    // C{|T| < 1}: compatible family over r < 1
    outer_tail,     // C{|T| >= 1}: support <= m, witness radius < 1
    polynomial,     // C[T] with the radius-indexed family of norms
    two_sided,      // C{|T| <= 1} (x) C{|T| >= 1}: witnesses r > 1, s < 1
};

inline const char* to_string(RingKind k)
{
    switch (k) {
    case RingKind::overconvergent: return "overconvergent";
    case RingKind::holomorphic: return "holomorphic";
    case RingKind::outer_tail: return "outer";
    case RingKind::polynomial: return "polynomial";
    case RingKind::two_sided: return "two-sided";
    }
    return "?";
}

inline std::optional<RingKind> ring_kind_from(std::string_view s)
{
    if (s == "overconvergent" || s == "closed") return RingKind::overconvergent;
    if (s == "holomorphic" || s == "open") return RingKind::holomorphic;
    if (s == "outer") return RingKind::outer_tail;
    if (s == "polynomial") return RingKind::polynomial;
    if (s == "two-sided") return RingKind::two_sided;
    return std::nullopt;
}

struct ring_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <Backend B>
class RingElement {
public:
    using real_type = typename B::real_type;
    using series_type = WeightedSeries<B>;
    /// Tail certificate for holomorphic elements: bound on the omitted terms at radius r < 1.
    using tail_function = std::function<real_type(const real_type&)>;

    /// Element of the Banach stage C{T/w} with w = s.radius() > 1.
    static RingElement overconvergent(series_type s)
    {
        if (!(s.radius() > 1)) throw ring_error("overconvergent witness radius must exceed 1");
        if (!s.support_nonnegative()) throw ring_error("overconvergent element has negative-degree terms");
        const real_type w = s.radius();
        return RingElement(std::move(s), RingKind::overconvergent, w, w);
    }

    /// Outer-tail element with witness w = s.radius() < 1.
    static RingElement outer_tail(series_type s)
    {
        if (!(s.radius() < 1)) throw ring_error("outer-tail witness radius must be below 1");
        const real_type w = s.radius();
        return RingElement(std::move(s), RingKind::outer_tail, w, w);
    }

    static RingElement polynomial(series_type s)
    {
        if (!s.is_polynomial()) throw ring_error("polynomial element carries a tail bound");
        if (!s.support_nonnegative()) throw ring_error("polynomial element has negative-degree terms");
        const real_type w = s.radius();
        return RingElement(std::move(s), RingKind::polynomial, w, w);
    }

    /// Holomorphic element: a truncation plus a certified tail bound for each r < 1.
    static RingElement holomorphic(series_type truncation, tail_function tail_at)
    {
        if (!truncation.support_nonnegative()) throw ring_error("holomorphic element has negative-degree terms");
        if (!tail_at) tail_at = [](const real_type&) { return real_type(0); };
        const real_type w = truncation.radius();
        RingElement e(std::move(truncation), RingKind::holomorphic, w, w);
        e.tail_at_ = std::make_shared<tail_function>(std::move(tail_at));
        return e;
    }

    /// Two-sided element: nonnegative part weighted at outer > 1, negative part at inner < 1.
    static RingElement two_sided(series_type s, real_type outer, real_type inner)
    {
        if (!(outer > 1)) throw ring_error("two-sided outer witness must exceed 1");
        if (!(inner < 1) || !(inner > 0)) throw ring_error("two-sided inner witness must lie in (0, 1)");
        if (!s.is_polynomial()) throw ring_error("two-sided elements are finite Laurent sums");
        s = s.with_radius(outer);
        return RingElement(std::move(s), RingKind::two_sided, std::move(outer), std::move(inner));
    }

    RingKind kind() const { return kind_; }
    const series_type& series() const { return series_; }
    /// Witness radius; for two-sided elements the outer one (> 1).
    const real_type& witness() const { return witness_; }
    /// Inner witness (< 1) of a two-sided element; equals witness() otherwise.
    const real_type& inner_witness() const { return inner_; }
    real_type holomorphic_tail(const real_type& r) const { return tail_at_ ? (*tail_at_)(r) : real_type(0); }

    std::string str() const
    {
        std::string s = format_terms(series_) + " ring=" + to_string(kind_) + " witness=" + B::real_str(witness_);
        if (kind_ == RingKind::two_sided) s += " inner=" + B::real_str(inner_);
        return s;
    }

private:
    RingElement(series_type s, RingKind k, real_type w, real_type inner)
        : series_(std::move(s)), kind_(k), witness_(std::move(w)), inner_(std::move(inner))
    {
    }

    series_type series_;
    RingKind kind_;
    real_type witness_;
    real_type inner_;
    std::shared_ptr<const tail_function> tail_at_;
};

namespace detail {

// sum_{n>=0} |a_{-n}| w^{-n}, including the tail bound.
template <Backend B>
NormValue<B> negative_part_norm(const WeightedSeries<B>& s, const typename B::real_type& w, bool include_zero)
{
    auto t = s.trimmed();
    if (t.coefficients().empty() || t.low_degree() > (include_zero ? 0 : -1)) {
        return t.tail_bound() ? B::norm_of(*t.tail_bound()) : NormValue<B>{};
    }
    return weighted_norm(t.restricted(t.low_degree(), include_zero ? 0 : -1), w);
}

} // namespace detail

/// Norm of a ring element. Holomorphic elements need an explicit radius r < 1;
/// polynomials use `r` when given and their own radius otherwise.
template <Backend B>
NormValue<B> ring_norm(const RingElement<B>& x, std::optional<typename B::real_type> r = std::nullopt)
{
    using real_type = typename B::real_type;
    const auto& s = x.series();
    switch (x.kind()) {
    case RingKind::overconvergent: return weighted_norm(s, x.witness());
    case RingKind::polynomial: return weighted_norm(s, r.value_or(x.witness()));
    case RingKind::holomorphic: {
        if (!r) throw ring_error("holomorphic norm needs a radius r < 1");
        if (!(*r < 1) || !(*r > 0)) throw ring_error("holomorphic norm radius must lie in (0, 1)");
        return weighted_norm(s.with_tail(std::nullopt), *r) + B::norm_of(x.holomorphic_tail(*r));
    }
    case RingKind::outer_tail: {
        // max( max_{0<=n<=m} |a_n| , sum_{n>=0} |a_{-n}| w^{-n} )
        NormValue<B> poly_sup{};
        auto t = s.trimmed();
        for (int n = std::max(0, t.low_degree()); n <= t.high_degree(); ++n) {
            poly_sup = norm_max(poly_sup, B::modulus(t.coefficient(n)));
        }
        NormValue<B> tail = detail::negative_part_norm(s, x.witness(), true);
        return norm_max(poly_sup, tail);
    }
    case RingKind::two_sided: {
        auto t = s.trimmed();
        NormValue<B> pos{};
        if (!t.coefficients().empty() && t.high_degree() >= 0) {
            pos = weighted_norm(t.restricted(0, t.high_degree()), x.witness());
        }
        return pos + detail::negative_part_norm(s, x.inner_witness(), false);
    }
    }
    (void)real_type{};
    return {};
}

template <Backend B>
struct SplitResult {
    RingElement<B> nonnegative; // f = sum_{n>=0} a_n T^n
    RingElement<B> negative;    // g = -sum_{n>=1} a_{-n} T^{-n}
    NormValue<B> norm_h;
    NormValue<B> norm_f;
    NormValue<B> norm_g;
    Certainty f_bounded; // norm_f <= norm_h
    Certainty g_bounded; // norm_g <= norm_h
};

/// Split a two-sided element h into (f, g) with f - g = h.
template <Backend B>
SplitResult<B> laurent_split(const RingElement<B>& h)
{
    if (h.kind() != RingKind::two_sided) throw ring_error("laurent_split expects a two-sided element");
    auto t = h.series().trimmed();
    WeightedSeries<B> pos(h.witness(), t.cap());
    WeightedSeries<B> neg(h.inner_witness(), t.cap());
    if (!t.coefficients().empty()) {
        if (t.high_degree() >= 0) pos = t.restricted(0, t.high_degree()).with_radius(h.witness());
        if (t.low_degree() <= -1) neg = (-t.restricted(t.low_degree(), -1)).with_radius(h.inner_witness());
    }
    auto f = RingElement<B>::overconvergent(std::move(pos));
    auto g = RingElement<B>::outer_tail(std::move(neg));
    auto nh = ring_norm(h);
    auto nf = ring_norm(f);
    auto ng = ring_norm(g);
    auto cf = certify_le(nf, nh);
    auto cg = certify_le(ng, nh);
    return {std::move(f), std::move(g), std::move(nh), std::move(nf), std::move(ng), cf, cg};
}

template <Backend B>
struct RecoverResult {
    std::optional<WeightedSeries<B>> polynomial;
    std::optional<int> first_difference; // lowest degree where f and g differ

    bool equal() const { return polynomial.has_value(); }
};

/// Kernel recovery: f = g as two-sided series forces a common polynomial.
template <Backend B>
RecoverResult<B> recover_polynomial(const RingElement<B>& f, const RingElement<B>& g)
{
    auto a = f.series().trimmed();
    auto b = g.series().trimmed();
    if (a.coefficients().empty() && b.coefficients().empty()) {
        return {WeightedSeries<B>(f.witness(), a.cap()), std::nullopt};
    }
    int lo = a.coefficients().empty() ? b.low_degree()
             : b.coefficients().empty() ? a.low_degree()
                                        : std::min(a.low_degree(), b.low_degree());
    int hi = a.coefficients().empty() ? b.high_degree()
             : b.coefficients().empty() ? a.high_degree()
                                        : std::max(a.high_degree(), b.high_degree());
    for (int n = lo; n <= hi; ++n) {
        if (!(a.coefficient(n) == b.coefficient(n))) return {std::nullopt, n};
    }
    return {a.with_tail(std::nullopt), std::nullopt};
}

/// Element sum_i b_i U^i of E_n = (+)_{i<=n} B U^i over B = C{T/r}, r < 1,
/// with norm sum_i |b_i|_B.
template <Backend B>
class ModuleElement {
public:
    using real_type = typename B::real_type;

    ModuleElement(std::vector<WeightedSeries<B>> entries, real_type r) : entries_(std::move(entries)), r_(std::move(r))
    {
        if (!(r_ > 0) || !(r_ < 1)) throw ring_error("module radius must lie in (0, 1)");
        for (auto& e : entries_) {
            if (!e.support_nonnegative()) throw ring_error("module entries must be power series in T");
            e = e.with_radius(r_);
        }
    }

    const std::vector<WeightedSeries<B>>& entries() const { return entries_; }
    const real_type& radius() const { return r_; }
    /// Index of the top U-power (-1 for the empty element).
    int u_degree() const { return static_cast<int>(entries_.size()) - 1; }

    NormValue<B> norm() const
    {
        NormValue<B> total{};
        for (const auto& e : entries_) total += weighted_norm(e);
        return total;
    }

    /// Image under U -> T: sum_i b_i T^i.
    WeightedSeries<B> evaluate_at_T() const
    {
        WeightedSeries<B> acc(r_);
        for (std::size_t i = 0; i < entries_.size(); ++i) acc = acc + entries_[i].shifted(static_cast<int>(i));
        return acc;
    }

    /// (T - U) * this.
    ModuleElement times_T_minus_U() const
    {
        std::vector<WeightedSeries<B>> out(entries_.size() + 1, WeightedSeries<B>(r_));
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            out[i] = out[i] + entries_[i].shifted(1);
            out[i + 1] = out[i + 1] - entries_[i];
        }
        return ModuleElement(std::move(out), r_);
    }

    friend bool operator==(const ModuleElement& a, const ModuleElement& b)
    {
        const std::size_t n = std::max(a.entries_.size(), b.entries_.size());
        for (std::size_t i = 0; i < n; ++i) {
            WeightedSeries<B> x = i < a.entries_.size() ? a.entries_[i] : WeightedSeries<B>(a.r_);
            WeightedSeries<B> y = i < b.entries_.size() ? b.entries_[i] : WeightedSeries<B>(b.r_);
            if (!x.same_coefficients(y)) return false;
        }
        return true;
    }

    std::string str() const
    {
        std::string out;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) out += " ; ";
            out += format_terms(entries_[i]);
        }
        return out.empty() ? "0:0" : out;
    }

private:
    std::vector<WeightedSeries<B>> entries_;
    real_type r_;
};

/// Dividend not in the kernel of U -> T.
struct division_precondition_error : ring_error {
    division_precondition_error(const std::string& what, double residual)
        : ring_error(what), residual_norm(residual)
    {
    }
    double residual_norm;
};

template <Backend B>
struct DivisionResult {
    ModuleElement<B> quotient;
    NormValue<B> norm_dividend;
    NormValue<B> norm_quotient;
    NormValue<B> bound; // norm_dividend / (1 - r)
    Certainty bounded;  // norm_quotient <= bound
};

/// Division by (T - U) on the kernel of evaluation at U = T:
/// c_i = -sum_{k=i+1}^{n+1} T^{k-i-1} b_k, computed by the equivalent
/// recurrence c_n = -b_{n+1}, c_i = T c_{i+1} - b_{i+1}.
template <Backend B>
DivisionResult<B> divide_by_T_minus_U(const ModuleElement<B>& b)
{
    using real_type = typename B::real_type;
    auto residual = b.evaluate_at_T();
    if (!residual.is_zero() || (residual.tail_bound() && *residual.tail_bound() > 0)) {
        const double rn = weighted_norm(residual).to_double();
        throw division_precondition_error("dividend does not vanish at U = T (residual norm " + std::to_string(rn) + ")",
                                          rn);
    }
    const auto& e = b.entries();
    const int n = b.u_degree() - 1;
    std::vector<WeightedSeries<B>> c(n >= 0 ? static_cast<std::size_t>(n) + 1 : 0, WeightedSeries<B>(b.radius()));
    for (int i = n; i >= 0; --i) {
        const auto& next_b = e[static_cast<std::size_t>(i) + 1];
        if (i == n) {
            c[static_cast<std::size_t>(i)] = -next_b;
        } else {
            c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i) + 1].shifted(1) - next_b;
        }
    }
    ModuleElement<B> q(std::move(c), b.radius());
    auto nb = b.norm();
    auto nq = q.norm();
    const real_type factor = real_type(1) / (real_type(1) - b.radius());
    NormValue<B> bound = factor * nb;
    auto ok = certify_le(nq, bound);
    return {std::move(q), std::move(nb), std::move(nq), std::move(bound), ok};
}

struct StrictnessRecord {
    std::size_t trial = 0;
    int degree = 0; // U-degree of the dividend
    double norm_b = 0;
    double norm_c = 0;
    double ratio = 0;
    double bound = 0;
    bool exact_inverse = false; // (T - U) c reproduces b
    bool pass = false;

    std::string str() const
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, "trial=%zu degree=%d normB=%.12g normC=%.12g ratio=%.12g bound=%.12g pass=%s",
                      trial, degree, norm_b, norm_c, ratio, bound, pass ? "true" : "false");
        return buf;
    }
};

struct StrictnessReport {
    Rational radius;
    std::vector<StrictnessRecord> records;
    double max_ratio = 0;
    std::size_t violations = 0;

    bool pass() const { return violations == 0; }

    /// Merge reports over the same radius; associative, order of records kept.
    StrictnessReport& merge(const StrictnessReport& o)
    {
        records.insert(records.end(), o.records.begin(), o.records.end());
        max_ratio = std::max(max_ratio, o.max_ratio);
        violations += o.violations;
        return *this;
    }

    void write(std::ostream& os) const
    {
        for (const auto& r : records) os << r.str() << '\n';
    }
};

/// Random element of E_n: U-degree <= max_u, T-degree <= max_t per entry.
inline ModuleElement<Exact> random_module_element(Rng& rng, const Rational& r, int max_u, int max_t, long coeff_bound = 5)
{
    const int u = static_cast<int>(rng.uniform(0, max_u));
    std::vector<WeightedSeries<Exact>> entries;
    for (int i = 0; i <= u; ++i) {
        const int d = static_cast<int>(rng.uniform(0, max_t));
        std::vector<GaussianRational> c(static_cast<std::size_t>(d) + 1);
        for (auto& a : c) a = rng.gaussian_integer(coeff_bound);
        entries.emplace_back(0, std::move(c), r);
    }
    return ModuleElement<Exact>(std::move(entries), r);
}

/// Randomized check of the division estimate |c| <= |b| / (1 - r) on kernel
/// elements b = (T - U) c' (exact backend). Trial t draws from stream t of
/// the seed, so trials can be run in any order or partition.
inline StrictnessReport strictness_certificate(const Rational& r, std::size_t trials, int max_degree, std::uint64_t seed,
                                               std::size_t first_trial = 0)
{
    if (!(r > 0) || !(r < 1)) throw ring_error("strictness radius must lie in (0, 1)");
    StrictnessReport rep;
    rep.radius = r;
    for (std::size_t t = first_trial; t < first_trial + trials; ++t) {
        Rng rng(seed, t);
        auto c_true = random_module_element(rng, r, max_degree, max_degree);
        auto b = c_true.times_T_minus_U();
        auto res = divide_by_T_minus_U(b);
        StrictnessRecord rec;
        rec.trial = t;
        rec.degree = b.u_degree();
        rec.norm_b = res.norm_dividend.to_double();
        rec.norm_c = res.norm_quotient.to_double();
        rec.ratio = rec.norm_b > 0 ? rec.norm_c / rec.norm_b : 0.0;
        rec.bound = Rational(1 / (1 - r)).get_d();
        rec.exact_inverse = res.quotient.times_T_minus_U() == b && res.quotient == c_true;
        rec.pass = rec.exact_inverse && res.bounded == Certainty::holds;
        rep.max_ratio = std::max(rep.max_ratio, rec.ratio);
        if (!rec.pass) ++rep.violations;
        rep.records.push_back(rec);
    }
    return rep;
}

template <Backend B>
struct InversionResult {
    RingElement<B> image;
    NormValue<B> source_norm;
    NormValue<B> image_norm;
};

/// T -> T^{-1}: overconvergent at r' > 1 goes to outer-tail at 1/r', and an
/// outer-tail element with support <= 0 goes back.
template <Backend B>
InversionResult<B> invert_variable(const RingElement<B>& x)
{
    using real_type = typename B::real_type;
    auto t = x.series().trimmed();
    std::vector<typename B::scalar_type> c(t.coefficients().rbegin(), t.coefficients().rend());
    const int low = t.coefficients().empty() ? 0 : -t.high_degree();
    const real_type w = real_type(1) / x.witness();
    WeightedSeries<B> s(low, std::move(c), w, t.tail_bound(), t.cap());
    if (x.kind() == RingKind::overconvergent) {
        auto img = RingElement<B>::outer_tail(std::move(s));
        auto n = ring_norm(img);
        return {std::move(img), ring_norm(x), std::move(n)};
    }
    if (x.kind() == RingKind::outer_tail) {
        if (!x.series().support_nonpositive()) throw ring_error("inversion of an outer element needs support <= 0");
        auto img = RingElement<B>::overconvergent(std::move(s));
        auto n = ring_norm(img);
        return {std::move(img), ring_norm(x), std::move(n)};
    }
    throw ring_error("invert_variable expects an overconvergent or outer-tail element");
}

template <Backend B>
struct PairingResult {
    typename B::scalar_type value;
    NormValue<B> modulus;
    NormValue<B> bound; // r |f|_r |g|
    Certainty bounded;
};

/// <f, g> = sum_{n>=0} a_n b_{-(n+1)} for f in C{T/r} and g with support <= -1
/// in the outer ring at the same r < 1.
template <Backend B>
PairingResult<B> dual_pairing(const WeightedSeries<B>& f, const RingElement<B>& g)
{
    using scalar_type = typename B::scalar_type;
    if (g.kind() != RingKind::outer_tail) throw ring_error("pairing expects an outer-tail element");
    if (!f.support_nonnegative()) throw ring_error("pairing expects f to be a power series");
    auto gs = g.series().trimmed();
    if (!gs.coefficients().empty() && gs.high_degree() > -1) throw ring_error("pairing expects g with support <= -1");
    if (!(f.radius() == g.witness())) throw ring_error("f and g must share the radius r");
    auto ft = f.trimmed();
    scalar_type acc{};
    if (!ft.coefficients().empty()) {
        for (int n = std::max(0, ft.low_degree()); n <= ft.high_degree(); ++n) {
            acc += ft.coefficient(n) * gs.coefficient(-(n + 1));
        }
    }
    auto mod = B::modulus(acc);
    NormValue<B> bound = f.radius() * (weighted_norm(f) * ring_norm(g));
    auto ok = certify_le(mod, bound);
    return {std::move(acc), std::move(mod), std::move(bound), ok};
}

} // namespace anline
