#include <anline/literal.hpp>
#include <anline/random.hpp>
#include <anline/rings.hpp>

#include <gtest/gtest.h>

using namespace anline;

namespace {

using ES = WeightedSeries<Exact>;
using ER = RingElement<Exact>;

Rational q(long a, long b = 1) { return make_rational(a, b); }

// c_i = -sum_{k=i+1}^{n+1} T^{k-i-1} b_k, term by term.
ModuleElement<Exact> direct_quotient(const ModuleElement<Exact>& b)
{
    const auto& e = b.entries();
    const int n = b.u_degree() - 1;
    std::vector<ES> c;
    for (int i = 0; i <= n; ++i) {
        ES acc(b.radius());
        for (int k = i + 1; k <= n + 1; ++k) acc = acc - e[static_cast<std::size_t>(k)].shifted(k - i - 1);
        c.push_back(acc);
    }
    return ModuleElement<Exact>(c, b.radius());
}

} // namespace

TEST(RingNorm, OuterTailTakesMax)
{
    auto g = ER::outer_tail(parse_series<Exact>("0:3 -1:1", q(1, 2)));
    EXPECT_EQ(ring_norm(g).exact().rational_value(), q(5));
    auto h = ER::outer_tail(parse_series<Exact>("2:4 0:3 -1:1", q(1, 2)));
    EXPECT_EQ(ring_norm(h).exact().rational_value(), q(5));
    auto k = ER::outer_tail(parse_series<Exact>("1:7 -2:1", q(1, 2)));
    EXPECT_EQ(ring_norm(k).exact().rational_value(), q(7));
}

TEST(RingNorm, Kinds)
{
    auto f = ER::overconvergent(parse_series<Exact>("0:1 1:1", q(2)));
    EXPECT_EQ(ring_norm(f).exact().rational_value(), q(3));
    auto p = ER::polynomial(parse_series<Exact>("0:1 2:1", q(1)));
    EXPECT_EQ(ring_norm(p, q(1, 2)).exact().rational_value(), q(5, 4));
    EXPECT_EQ(ring_norm(p).exact().rational_value(), q(2));
    // 1/(1-T) truncated at degree 3 with tail r^4/(1-r)
    auto hol = ER::holomorphic(parse_series<Exact>("0:1 1:1 2:1 3:1"),
                               [](const Rational& r) { return Rational(r * r * r * r / (1 - r)); });
    EXPECT_EQ(ring_norm(hol, q(1, 2)).exact().rational_value(), q(2));
    EXPECT_THROW(ring_norm(hol), ring_error);
    EXPECT_THROW(ring_norm(hol, q(1)), ring_error);
    auto h = ER::two_sided(parse_series<Exact>("1:1 0:1 -1:1"), q(2), q(1, 2));
    EXPECT_EQ(ring_norm(h).exact().rational_value(), q(5));
    EXPECT_THROW(ER::overconvergent(parse_series<Exact>("0:1", q(1))), ring_error);
    EXPECT_THROW(ER::overconvergent(parse_series<Exact>("-1:1", q(2))), ring_error);
    EXPECT_THROW(ER::outer_tail(parse_series<Exact>("0:1", q(1))), ring_error);
}

TEST(LaurentSplit, Example)
{
    auto h = ER::two_sided(parse_series<Exact>("1:1 0:1 -1:1"), q(2), q(1, 2));
    auto s = laurent_split(h);
    EXPECT_EQ(format_terms(s.nonnegative.series()), "1:1 0:1");
    EXPECT_EQ(format_terms(s.negative.series()), "-1:-1");
    EXPECT_EQ(s.norm_f.exact().rational_value(), q(3));
    EXPECT_EQ(s.norm_g.exact().rational_value(), q(2));
    EXPECT_EQ(s.f_bounded, Certainty::holds);
    EXPECT_EQ(s.g_bounded, Certainty::holds);
}

TEST(LaurentSplit, ReconstructsAndBounds)
{
    Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        std::vector<GaussianRational> c;
        const int lo = static_cast<int>(rng.uniform(-6, 0));
        const int hi = static_cast<int>(rng.uniform(0, 6));
        for (int n = lo; n <= hi; ++n) c.push_back(rng.gaussian_integer(3));
        const Rational r = 1 + abs(rng.rational(4, 4)) + q(1, 8);
        const Rational s = q(1, 2) + abs(rng.rational(3, 9)) / 8;
        auto h = ER::two_sided(ES(lo, c, r), r, s);
        auto sp = laurent_split(h);
        auto diff = sp.nonnegative.series().with_radius(1) - sp.negative.series().with_radius(1);
        EXPECT_TRUE(diff.same_coefficients(h.series().with_radius(1)));
        EXPECT_EQ(sp.f_bounded, Certainty::holds);
        EXPECT_EQ(sp.g_bounded, Certainty::holds);
    }
}

TEST(RecoverPolynomial, EqualAndDifferent)
{
    auto f = ER::overconvergent(parse_series<Exact>("0:1 2:3", q(2)));
    auto g = ER::outer_tail(parse_series<Exact>("0:1 2:3", q(1, 2)));
    auto r = recover_polynomial(f, g);
    ASSERT_TRUE(r.equal());
    EXPECT_EQ(format_terms(*r.polynomial), "2:3 0:1");
    auto g2 = ER::outer_tail(parse_series<Exact>("0:1 2:3 -3:1", q(1, 2)));
    auto r2 = recover_polynomial(f, g2);
    EXPECT_FALSE(r2.equal());
    EXPECT_EQ(*r2.first_difference, -3);
}

TEST(Division, SmallExample)
{
    // b = (T - U) * 1 = T - U
    ModuleElement<Exact> b({parse_series<Exact>("1:1"), parse_series<Exact>("0:-1")}, q(1, 2));
    auto d = divide_by_T_minus_U(b);
    ASSERT_EQ(d.quotient.entries().size(), 1u);
    EXPECT_EQ(format_terms(d.quotient.entries()[0]), "0:1");
    EXPECT_EQ(d.norm_dividend.exact().rational_value(), q(3, 2));
    EXPECT_EQ(d.bound.exact().rational_value(), q(3));
    EXPECT_EQ(d.bounded, Certainty::holds);
}

TEST(Division, RejectsNonKernel)
{
    ModuleElement<Exact> b({parse_series<Exact>("0:1"), parse_series<Exact>("0:1")}, q(1, 2));
    try {
        divide_by_T_minus_U(b);
        FAIL() << "expected a precondition error";
    } catch (const division_precondition_error& e) {
        EXPECT_DOUBLE_EQ(e.residual_norm, 1.5);
    }
}

TEST(Division, MatchesDirectFormula)
{
    Rng rng(32);
    for (int t = 0; t < 150; ++t) {
        auto c = random_module_element(rng, q(2, 3), 4, 4);
        auto b = c.times_T_minus_U();
        auto d = divide_by_T_minus_U(b);
        EXPECT_TRUE(d.quotient == direct_quotient(b));
        EXPECT_TRUE(d.quotient == c);
        EXPECT_EQ(d.bounded, Certainty::holds);
        EXPECT_TRUE(b.evaluate_at_T().is_zero());
    }
}

TEST(Strictness, ReportIsSeededAndPasses)
{
    auto a = strictness_certificate(q(1, 2), 20, 3, 99);
    auto b = strictness_certificate(q(1, 2), 20, 3, 99);
    ASSERT_EQ(a.records.size(), 20u);
    EXPECT_TRUE(a.pass());
    for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(a.records[i].str(), b.records[i].str());
    // trials are independent streams, so partitions merge to the same report
    auto p1 = strictness_certificate(q(1, 2), 8, 3, 99, 0);
    auto p2 = strictness_certificate(q(1, 2), 12, 3, 99, 8);
    p1.merge(p2);
    ASSERT_EQ(p1.records.size(), 20u);
    for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(a.records[i].str(), p1.records[i].str());
    EXPECT_LE(a.max_ratio, 2.0);
}

TEST(Inversion, Involution)
{
    Rng rng(33);
    for (int t = 0; t < 100; ++t) {
        std::vector<GaussianRational> c;
        for (int n = 0; n <= rng.uniform(0, 6); ++n) c.push_back(rng.gaussian_integer(5));
        const Rational w = 1 + abs(rng.rational(5, 5)) + q(1, 3);
        auto f = ER::overconvergent(ES(0, c, w));
        auto inv = invert_variable(f);
        EXPECT_EQ(inv.image.kind(), RingKind::outer_tail);
        EXPECT_EQ(inv.image.witness(), 1 / w);
        auto back = invert_variable(inv.image);
        EXPECT_EQ(back.image.kind(), RingKind::overconvergent);
        EXPECT_TRUE(back.image.series().same_coefficients(f.series()));
        EXPECT_EQ(back.image.witness(), w);
        // the sum-norm at w is the negative-part sum at 1/w
        EXPECT_EQ(certify_le(inv.image_norm, inv.source_norm), Certainty::holds);
    }
}

TEST(Pairing, ValueAndBound)
{
    auto f = parse_series<Exact>("0:1 1:1", q(1, 2));
    auto g = ER::outer_tail(parse_series<Exact>("-1:1 -2:2", q(1, 2)));
    auto p = dual_pairing(f, g);
    EXPECT_EQ(p.value, GaussianRational(3));
    // bound = r |f| |g| = 1/2 * 3/2 * (2 + 8) = 15/2
    EXPECT_EQ(p.bound.exact().rational_value(), q(15, 2));
    EXPECT_EQ(p.bounded, Certainty::holds);
    auto g0 = ER::outer_tail(parse_series<Exact>("0:1", q(1, 2)));
    EXPECT_THROW(dual_pairing(f, g0), ring_error);
    auto g3 = ER::outer_tail(parse_series<Exact>("-1:1", q(1, 3)));
    EXPECT_THROW(dual_pairing(f, g3), ring_error);
}

TEST(Pairing, BoundHoldsRandomly)
{
    Rng rng(34);
    for (int t = 0; t < 200; ++t) {
        const Rational r(rng.uniform(1, 9), 10);
        std::vector<GaussianRational> a, b;
        for (int n = 0; n <= rng.uniform(0, 5); ++n) a.push_back(rng.gaussian_integer(4));
        for (int n = 0; n <= rng.uniform(0, 5); ++n) b.push_back(rng.gaussian_integer(4));
        auto f = ES(0, a, r);
        auto g = ER::outer_tail(ES(-static_cast<int>(b.size()), b, r));
        EXPECT_EQ(dual_pairing(f, g).bounded, Certainty::holds);
    }
}

TEST(Pairing, Bilinear)
{
    Rng rng(35);
    const Rational r = q(3, 4);
    auto random_series = [&](int low, int len) {
        std::vector<GaussianRational> c;
        for (int n = 0; n < len; ++n) c.push_back(rng.gaussian_integer(3));
        return ES(low, c, r);
    };
    for (int t = 0; t < 100; ++t) {
        const ES f1 = random_series(0, 5), f2 = random_series(0, 3);
        const ES g1 = random_series(-6, 6), g2 = random_series(-4, 4);
        const GaussianRational a = rng.gaussian_integer(4), b = rng.gaussian_integer(4);
        const ES fa = ES(0, {a}, r) * f1 + ES(0, {b}, r) * f2;
        const auto G1 = ER::outer_tail(g1), G2 = ER::outer_tail(g2);
        EXPECT_EQ(dual_pairing(fa, G1).value, a * dual_pairing(f1, G1).value + b * dual_pairing(f2, G1).value);
        const auto Gs = ER::outer_tail(ES(0, {a}, r) * g1 + ES(0, {b}, r) * g2);
        EXPECT_EQ(dual_pairing(f1, Gs).value, a * dual_pairing(f1, G1).value + b * dual_pairing(f1, G2).value);
    }
}

TEST(Division, KernelOfEvaluation)
{
    // (T - U) c always lies in the kernel of U -> T, and division inverts it
    Rng rng(36);
    for (int t = 0; t < 100; ++t) {
        const auto c = random_module_element(rng, q(1, 5), 5, 5);
        const auto b = c.times_T_minus_U();
        EXPECT_TRUE(b.evaluate_at_T().is_zero());
        EXPECT_TRUE(divide_by_T_minus_U(b).quotient == c);
    }
}
