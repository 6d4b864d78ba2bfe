#include <anline/random.hpp>
#include <anline/region.hpp>
#include <anline/sampler.hpp>

#include <gtest/gtest.h>

using namespace anline;

namespace {

Sampler small_sampler(std::uint64_t seed = 0)
{
    Sampler s;
    s.x0 = s.y0 = -3;
    s.x1 = s.y1 = 3;
    s.grid_step = 1.0 / 8;
    s.random_points = 500;
    s.seed = seed;
    return s;
}

RegionExpr random_atom(Rng& rng)
{
    std::vector<GaussianRational> c;
    for (int k = 0, d = static_cast<int>(rng.uniform(1, 3)); k <= d; ++k) c.push_back(rng.gaussian_integer(3));
    if (c.back().is_zero()) c.back() = GaussianRational(1);
    const Rel rels[] = {Rel::le, Rel::lt, Rel::ge, Rel::gt};
    return RegionExpr::atom(Polynomial(c), rels[rng.uniform(0, 3)], Rational(rng.uniform(1, 8), rng.uniform(1, 3)));
}

} // namespace

TEST(Region, MeetJoinIdentities)
{
    auto R = parse_region("|T| <= 1");
    EXPECT_EQ(meet(RegionExpr::full(), R), R);
    EXPECT_EQ(join(R, RegionExpr::empty()), R);
    EXPECT_TRUE(meet(RegionExpr::empty(), R).is_empty());
    EXPECT_TRUE(join(RegionExpr::full(), R).is_full());
    auto band = meet(parse_region("|T| <= 1"), parse_region("|T| >= 1"));
    EXPECT_EQ(member(band, {1, 0}), Membership::in);
    EXPECT_EQ(member(band, {2, 0}), Membership::out);
}

TEST(Region, MembershipStrictness)
{
    EXPECT_EQ(member(parse_region("|T| <= 1"), {0, 1}), Membership::in);
    EXPECT_EQ(member(parse_region("|T| < 1"), {0, 1}), Membership::out);
    const GaussianRational near_circle{Rational(0.6), Rational(0.8)};
    EXPECT_EQ(member(parse_region("|T| >= 1"), {0.6, 0.8}) == Membership::in, near_circle.norm2() >= 1);
    EXPECT_EQ(member(parse_region("|T| < 1"), {0, 1}, false), Membership::undecided);
    EXPECT_EQ(member(parse_region("|T^2 - 2| <= 2"), {2, 0}), Membership::in);
}

TEST(Region, FloatAgreesWithExactModulus)
{
    Rng rng(51);
    for (int t = 0; t < 2000; ++t) {
        auto R = random_atom(rng);
        std::complex<double> z(rng.unit() * 6 - 3, rng.unit() * 6 - 3);
        GaussianRational zq{Rational(z.real()), Rational(z.imag())};
        EXPECT_EQ(member(R, z) == Membership::in, member_exact(R, zq)) << R.str();
        auto fast = member(R, z, false);
        if (fast != Membership::undecided) EXPECT_EQ(fast == Membership::in, member_exact(R, zq));
    }
}

TEST(Region, ParseAndPrintRoundTrip)
{
    auto R = parse_region("(|T| <= 1 & |T-1| > 1/2) | |T^2+1| >= 3 | Empty");
    EXPECT_EQ(parse_region(R.str()), R);
    EXPECT_EQ(parse_region("Full & |T| < 2"), parse_region("|T| < 2"));
    EXPECT_THROW(parse_region("|T| <= 0"), parse_error);
    EXPECT_THROW(parse_region("|T <= 1"), parse_error);
    EXPECT_THROW(parse_region("|T| = 1"), parse_error);
    EXPECT_THROW(parse_region("|0| <= 1"), parse_error);
    Rng rng(52);
    for (int t = 0; t < 200; ++t) {
        auto a = join(meet(random_atom(rng), random_atom(rng)), random_atom(rng));
        EXPECT_EQ(parse_region(a.str()).str(), a.str());
        EXPECT_EQ(parse_region(a.str()), a) << a.str();
    }
}

TEST(Region, NormalizationIsIdempotentAndAbsorbs)
{
    auto a = parse_region("|T| <= 1");
    auto b = parse_region("|T-1| <= 1");
    EXPECT_EQ(join(a, meet(a, b)), a);
    EXPECT_EQ(meet(a, a), a);
    EXPECT_EQ(RegionExpr(join(a, b).clauses()), join(a, b));
}

TEST(Includes, Basics)
{
    auto s = small_sampler();
    EXPECT_FALSE(includes(RegionExpr::empty(), parse_region("|T| <= 1"), s).counterexample);
    auto v = includes(parse_region("|T| <= 1"), parse_region("|T| <= 2"), s);
    EXPECT_FALSE(v.counterexample);
    EXPECT_EQ(v.samples, s.size());
    auto w = includes(parse_region("|T| <= 2"), parse_region("|T| <= 1"), s);
    ASSERT_TRUE(w.counterexample);
    EXPECT_GT(std::abs(w.z), 1.0);
    EXPECT_LE(std::abs(w.z), 2.0);
}

TEST(Includes, DeterministicAcrossWorkers)
{
    Rng rng(53);
    for (int t = 0; t < 20; ++t) {
        auto a = join(random_atom(rng), random_atom(rng));
        auto b = meet(random_atom(rng), random_atom(rng));
        auto s1 = small_sampler(t);
        auto s3 = s1;
        s3.workers = 3;
        EXPECT_EQ(includes(a, b, s1).str(), includes(a, b, s3).str());
    }
}

TEST(Includes, EmptySamplerIsVacuous)
{
    Sampler s;
    s.grid_step = 0;
    s.random_points = 0;
    auto v = includes(parse_region("|T| <= 2"), parse_region("|T| <= 1"), s);
    EXPECT_FALSE(v.counterexample);
    EXPECT_TRUE(v.vacuous());
}

TEST(Lattice, LawsHoldPointwise)
{
    Rng rng(54);
    auto s = small_sampler();
    for (int t = 0; t < 30; ++t) {
        auto a = join(random_atom(rng), meet(random_atom(rng), random_atom(rng)));
        auto b = random_atom(rng);
        auto c = meet(random_atom(rng), random_atom(rng));
        for (const auto& law : lattice_law_check(a, b, c, s)) EXPECT_FALSE(law.verdict.counterexample) << law.law;
        EXPECT_FALSE(distributivity_check(a, RegionExpr::empty(), RegionExpr::full(), s).counterexample);
    }
}

TEST(Gaga, DefaultsPass)
{
    auto items = gaga_axiom_suite(GagaConfig{}, small_sampler());
    ASSERT_EQ(items.size(), 6u);
    for (const auto& it : items) EXPECT_FALSE(it.verdict.counterexample) << it.item << " " << it.verdict.str();
}

TEST(Gaga, NegatedItemSixFails)
{
    GagaConfig cfg;
    cfg.f = Polynomial::T();
    cfg.g = Polynomial(1);
    cfg.negate = 6;
    auto items = gaga_axiom_suite(cfg, small_sampler());
    EXPECT_TRUE(items[5].verdict.counterexample);
    for (int k = 0; k < 5; ++k) EXPECT_FALSE(items[static_cast<std::size_t>(k)].verdict.counterexample);
}

TEST(Gaga, UsageErrors)
{
    GagaConfig cfg;
    cfg.r3 = 1;
    EXPECT_THROW(gaga_axiom_suite(cfg, small_sampler()), config_error);
    GagaConfig z;
    z.alpha = GaussianRational(0);
    EXPECT_THROW(gaga_axiom_suite(z, small_sampler()), config_error);
    GagaConfig n;
    n.negate = 3;
    EXPECT_THROW(gaga_axiom_suite(n, small_sampler()), config_error);
}

TEST(Gaga, CancellingSumIsFull)
{
    GagaConfig cfg;
    cfg.g = -cfg.f;
    auto items = gaga_axiom_suite(cfg, small_sampler());
    EXPECT_FALSE(items[5].verdict.counterexample);
}
