#include <anline/huber.hpp>
#include <anline/literal.hpp>
#include <anline/random.hpp>

#include <gtest/gtest.h>

using namespace anline;

namespace {

Polynomial P(const char* s) { return parse_polynomial(s); }
RationalFunction F(const char* s) { return parse_rational_function(s); }

Polynomial random_poly(Rng& rng, int max_degree)
{
    const int d = static_cast<int>(rng.uniform(0, max_degree));
    std::vector<GaussianRational> c;
    for (int k = 0; k <= d; ++k) c.push_back(rng.gaussian_integer(3));
    Polynomial p(std::move(c));
    return p.is_zero() ? Polynomial(1) : p;
}

// Random polynomial with a forced root of random multiplicity at z.
Polynomial random_with_root(Rng& rng, const GaussianRational& z)
{
    const int m = static_cast<int>(rng.uniform(0, 3));
    return Polynomial::linear(z).pow(m) * random_poly(rng, 3);
}

} // namespace

TEST(HuberPair, GeneratorsDeduplicatedAndContainOne)
{
    HuberPair p({}, {F("T"), F("2*T"), F("1"), F("T")});
    ASSERT_EQ(p.aplus().size(), 2u);
    EXPECT_EQ(p.aplus()[0], RationalFunction(1));
    EXPECT_EQ(p.aplus()[1], F("T"));
}

TEST(HuberPair, UnitsOfLocalizedRing)
{
    HuberPair p({P("T^2 - T")});
    EXPECT_EQ(p.inverted().size(), 1u); // squarefree already, no split needed
    EXPECT_TRUE(p.is_unit(P("T^3")));
    EXPECT_TRUE(p.is_unit(P("3*T*(T-1)^2")));
    EXPECT_FALSE(p.is_unit(P("T+1")));
    EXPECT_TRUE(p.contains(F("1/(T^2)")));
    EXPECT_FALSE(p.contains(F("1/(T+1)")));
}

TEST(HuberPair, CoprimeBasisFactorsInputs)
{
    const std::vector<Polynomial> in{P("T^2*(T-1)"), P("(T-1)^3*(T+2)"), P("T^2 + 2*T")};
    const auto basis = coprime_basis(in);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        EXPECT_EQ(basis[i], squarefree_part(basis[i]));
        for (std::size_t j = i + 1; j < basis.size(); ++j) EXPECT_TRUE(gcd(basis[i], basis[j]).is_constant());
    }
    for (const auto& p : in) {
        Polynomial prod(p.leading());
        for (const auto& q : basis) prod = prod * q.pow(multiplicity(p, q));
        EXPECT_EQ(prod, p);
    }
}

TEST(Localize, AdjoinWithoutInversion)
{
    const HuberPair out = rational_localize(HuberPair(), {P("T")}, P("1"));
    EXPECT_TRUE(out.inverted().empty());
    ASSERT_EQ(out.aplus().size(), 2u);
    EXPECT_EQ(out.aplus()[1], F("T"));
}

TEST(Localize, InvertT)
{
    const HuberPair out = rational_localize(HuberPair(), {P("1")}, P("T"));
    ASSERT_EQ(out.inverted().size(), 1u);
    EXPECT_EQ(out.inverted()[0], P("T"));
    ASSERT_EQ(out.aplus().size(), 2u);
    EXPECT_EQ(out.aplus()[1], F("1/T"));
}

TEST(Localize, UnitIdealFailureCarriesGcd)
{
    try {
        rational_localize(HuberPair(), {P("T^2"), P("T^2 - T")}, P("T"));
        FAIL() << "expected site_error";
    } catch (const site_error& e) {
        EXPECT_NE(std::string(e.what()).find("gcd T"), std::string::npos) << e.what();
    }
    // T is already a unit after inverting it, so the same family is allowed
    EXPECT_NO_THROW(rational_localize(HuberPair({P("T")}), {P("T^2"), P("T^2 - T")}, P("T")));
}

TEST(Localize, TwiceEqualsOnce)
{
    const Polynomial f = P("T"), g = P("T+1");
    const HuberPair base;
    const HuberPair twice = rational_localize(rational_localize(base, {f}, P("1")), {g}, P("1"));
    const HuberPair once = rational_localize(base, {f * g, f, g}, P("1"));
    EXPECT_TRUE(equivalent(twice, once));
    EXPECT_FALSE(equivalent(twice, rational_localize(base, {f}, P("1"))));
}

TEST(Localize, CompositionLawRandom)
{
    Rng rng(21);
    const HuberPair base;
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        // the combined family is a unit ideal of the base ring only when gcd(g, k) is a unit
        const GaussianRational a = rng.gaussian_integer(2);
        GaussianRational b = rng.gaussian_integer(2);
        if (b == a) b = b + GaussianRational(1);
        const Polynomial g = Polynomial::linear(a).pow(static_cast<int>(rng.uniform(0, 2)));
        const Polynomial k = Polynomial::linear(b).pow(static_cast<int>(rng.uniform(0, 2)));
        std::vector<Polynomial> fs{random_poly(rng, 3), Polynomial(1)};
        std::vector<Polynomial> hs{random_poly(rng, 3)};
        hs.push_back(Polynomial(1));
        const HuberPair step = rational_localize(rational_localize(base, fs, g), hs, k);
        const auto [num, den] = compose_localizations(fs, g, hs, k);
        const HuberPair once = rational_localize(base, num, den);
        EXPECT_TRUE(equivalent(step, once)) << step.str() << " vs " << once.str();
        ++checked;
    }
    EXPECT_EQ(checked, 60);
}

TEST(Monoid, Membership)
{
    const std::vector<RationalFunction> gens{F("T"), F("1/(T-1)")};
    EXPECT_TRUE(in_aplus_monoid(F("5*T^3/(T-1)^2"), gens));
    EXPECT_TRUE(in_aplus_monoid(F("-2"), gens));
    EXPECT_FALSE(in_aplus_monoid(F("1/T"), gens));
    EXPECT_FALSE(in_aplus_monoid(F("T-1"), gens));
    EXPECT_FALSE(in_aplus_monoid(F("T+1"), gens));
}

TEST(Covers, TwoPieceAtT)
{
    const auto covers = generate_covers(HuberPair(), F("T"));
    ASSERT_EQ(covers.size(), 1u);
    const auto& c = covers[0];
    ASSERT_EQ(c.members.size(), 2u);
    EXPECT_TRUE(equivalent(c.members[0].pair, HuberPair({}, {F("T")})));
    EXPECT_TRUE(equivalent(c.members[1].pair, HuberPair({P("T")}, {F("1/T")})));
}

TEST(Covers, TwoPieceAtUnit)
{
    const auto c = two_piece_cover(HuberPair(), F("1"));
    ASSERT_EQ(c.members.size(), 2u);
    EXPECT_TRUE(c.members[1].pair.inverted().empty());
    EXPECT_TRUE(equivalent(c.members[0].pair, HuberPair()));
    EXPECT_THROW(two_piece_cover(HuberPair(), F("0")), site_error);
    EXPECT_THROW(two_piece_cover(HuberPair(), F("1/T")), site_error);
}

TEST(Covers, ZariskiCertificate)
{
    const std::vector<Polynomial> fam{P("T"), P("T-1")};
    const auto covers = generate_covers(HuberPair(), F("T"), fam);
    ASSERT_EQ(covers.size(), 2u);
    const auto& z = covers[1];
    EXPECT_EQ(z.kind, CoverKind::zariski);
    ASSERT_EQ(z.certificate.size(), 2u);
    EXPECT_EQ(z.certificate[0], P("1"));
    EXPECT_EQ(z.certificate[1], P("-1"));
    Polynomial sum;
    for (std::size_t i = 0; i < fam.size(); ++i) sum = sum + z.certificate[i] * fam[i];
    EXPECT_EQ(sum, P("1"));
    EXPECT_THROW(zariski_cover(HuberPair(), {P("T"), P("T^2")}), site_error);
}

TEST(Covers, ZariskiCertificateRandom)
{
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Polynomial> fam;
        for (int i = 0; i < 3; ++i) fam.push_back(Polynomial::linear(rng.gaussian_integer(3)) * random_poly(rng, 2));
        fam.push_back(Polynomial(1) + Polynomial::T() * fam[0]); // coprime to fam[0]
        const auto z = zariski_cover(HuberPair(), fam);
        Polynomial sum;
        for (std::size_t i = 0; i < fam.size(); ++i) sum = sum + z.certificate[i] * fam[i];
        EXPECT_EQ(sum, P("1"));
    }
}

TEST(Refines, ReflexiveAndEnlarged)
{
    const auto c = two_piece_cover(HuberPair(), F("T"));
    const auto r = refines(c, c);
    ASSERT_TRUE(r.refines);
    EXPECT_EQ(r.assignment, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(r.str(), "refines=true assignment=0->0,1->1");

    const auto big = two_piece_cover(HuberPair({}, {F("T+1")}), F("T"));
    EXPECT_TRUE(refines(big, c).refines);
    EXPECT_FALSE(refines(c, big).refines);
}

TEST(Refines, IndependentElementsGiveWitness)
{
    const auto cf = two_piece_cover(HuberPair(), F("T"));
    const auto cg = two_piece_cover(HuberPair(), F("T-1"));
    const auto r = refines(cf, cg);
    EXPECT_FALSE(r.refines);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(*r.witness, 0u);
    EXPECT_EQ(r.str(), "refines=false witness=0");
}

TEST(Refines, TransitiveOnChain)
{
    const auto a = two_piece_cover(HuberPair({}, {F("T+1"), F("T+2")}), F("T"));
    const auto b = two_piece_cover(HuberPair({}, {F("T+1")}), F("T"));
    const auto c = two_piece_cover(HuberPair(), F("T"));
    ASSERT_TRUE(refines(a, b).refines);
    ASSERT_TRUE(refines(b, c).refines);
    EXPECT_TRUE(refines(a, c).refines);
}

TEST(Valuation, OrderAtZero)
{
    const auto v = Valuation::order_at(GaussianRational(0), Rational(1, 2));
    EXPECT_EQ(v(P("T")), (ValuationValue{false, 1}));
    EXPECT_EQ(v(P("T^2")), (ValuationValue{false, 2}));
    EXPECT_EQ(v(P("T^2 + T")), (ValuationValue{false, 1}));
    EXPECT_EQ(v(P("T^2 + T")), max(v(P("T")), v(P("T^2"))));
    EXPECT_EQ(v(P("T")).str(v.gamma()), "1/2^1");
    EXPECT_THROW(Valuation::order_at(GaussianRational(0), Rational(1)), site_error);
}

TEST(Valuation, ZeroAndOneForEveryKind)
{
    for (const auto& v : {Valuation::order_at(GaussianRational(1), Rational(1, 3)), Valuation::trivial_at(GaussianRational(2)),
                          Valuation::trivial_generic()}) {
        EXPECT_TRUE(v(Polynomial()).zero);
        EXPECT_EQ(v(Polynomial(1)), (ValuationValue{false, 0}));
    }
}

TEST(Valuation, TrivialAtPrimeMatchesEvaluation)
{
    Rng rng(8);
    const GaussianRational z(Rational(1), Rational(-1));
    const auto v = Valuation::trivial_at(z);
    for (int i = 0; i < 300; ++i) {
        const Polynomial f = random_with_root(rng, z);
        EXPECT_EQ(v(f).zero, f(z).is_zero());
    }
    std::vector<Polynomial> sample;
    for (int i = 0; i < 45; ++i) sample.push_back(random_with_root(rng, z));
    EXPECT_TRUE(valuation_axiom_check(v, sample).pass());
}

TEST(Valuation, AxiomsOnRandomPairs)
{
    Rng rng(99);
    for (int k = 0; k < 5; ++k) {
        const GaussianRational z = rng.gaussian_integer(2);
        const auto v = Valuation::order_at(z, Rational(rng.uniform(1, 15), 16));
        std::vector<Polynomial> sample;
        for (int i = 0; i < 45; ++i) sample.push_back(random_with_root(rng, z));
        const auto rep = valuation_axiom_check(v, sample);
        EXPECT_EQ(rep.pairs, 45u * 46u / 2u);
        EXPECT_TRUE(rep.pass()) << rep.violations.front();
    }
}

TEST(Valuation, RationalFunctionValues)
{
    const auto v = Valuation::order_at(GaussianRational(0), Rational(1, 2));
    EXPECT_EQ(v(F("1/T")), (ValuationValue{false, -1}));
    EXPECT_EQ(v(F("T^3/(T+1)")), (ValuationValue{false, 3}));
    EXPECT_THROW(Valuation::trivial_at(GaussianRational(0))(F("1/T")), site_error);
}

TEST(Spa, RationalSubsetMembership)
{
    const auto v = Valuation::order_at(GaussianRational(0), Rational(1, 2));
    const HuberPair base;
    EXPECT_EQ(spa_membership(v, base, RationalSubsetSpec({P("T")}, P("1"))), SpaVerdict::member);
    EXPECT_EQ(spa_membership(v, base, RationalSubsetSpec({P("1")}, P("T"))), SpaVerdict::not_member);
    // v(g) = 0 is excluded by the nonvanishing clause
    const auto t = Valuation::trivial_at(GaussianRational(0));
    EXPECT_EQ(spa_membership(t, base, RationalSubsetSpec({P("1")}, P("T"))), SpaVerdict::not_member);
    // 1/T in A+ forces v(T) >= 1
    const HuberPair inv({P("T")}, {F("1/T")});
    EXPECT_EQ(spa_membership(v, inv, RationalSubsetSpec({P("T")}, P("1"))), SpaVerdict::outside_spa);
    EXPECT_EQ(spa_membership(t, inv, RationalSubsetSpec({P("T")}, P("1"))), SpaVerdict::not_defined);
}

TEST(Equivalence, SameOrderFunctionDifferentGamma)
{
    Rng rng(3);
    std::vector<Polynomial> sample;
    for (int i = 0; i < 30; ++i) sample.push_back(random_with_root(rng, GaussianRational(0)));
    const auto v = Valuation::order_at(GaussianRational(0), Rational(1, 2));
    EXPECT_TRUE(equivalence_check(v, Valuation::order_at(GaussianRational(0), Rational(1, 3)), sample).equivalent);
    EXPECT_TRUE(equivalence_check(v, v, sample).equivalent);
}

TEST(Equivalence, DifferentPointsGiveWitness)
{
    const std::vector<Polynomial> sample{P("T"), P("1")};
    const auto r = equivalence_check(Valuation::order_at(GaussianRational(0), Rational(1, 2)),
                                     Valuation::order_at(GaussianRational(1), Rational(1, 2)), sample);
    EXPECT_FALSE(r.equivalent);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(sample[r.witness->first], P("T"));
    EXPECT_EQ(sample[r.witness->second], P("1"));
}

#include <anline/fixture.hpp>

TEST(Fixture, ParsesInlineText)
{
    std::istringstream in("# comment\npair = ring=C[T] inverted=T aplus=1/T\ncover = twopiece T+1 +aplus T\n"
                          "cover = zariski T, T-1\nvaluation = order 1 1/2\nrational = 1 ; T\n");
    const auto fx = parse_site_fixture(in);
    EXPECT_EQ(fx.pair.str(), "ring=C[T] inverted=T aplus=1,1/T");
    ASSERT_EQ(fx.covers.size(), 2u);
    EXPECT_EQ(fx.covers[0].base.aplus().size(), 3u);
    EXPECT_EQ(fx.covers[1].kind, CoverKind::zariski);
    std::ostringstream out;
    write_spa(fx, out);
    EXPECT_EQ(out.str(), "spa order 1 1/2 in " + fx.rationals[0].str() + " -> member\n");
}

TEST(Fixture, ErrorsCarryLineNumbers)
{
    std::istringstream in("pair = ring=C[T]\ncover = zariski T, T^2\n");
    try {
        parse_site_fixture(in, "bad.site");
        FAIL();
    } catch (const fixture_error& e) {
        EXPECT_EQ(std::string(e.what()).rfind("bad.site:2:", 0), 0u) << e.what();
    }
    std::istringstream unknown("colour = blue\n");
    EXPECT_THROW(parse_site_fixture(unknown), fixture_error);
}

TEST(Fixture, CorpusProperties)
{
    const auto corpus = load_fixture_directory(ANLINE_FIXTURE_DIR);
    std::size_t covers = 0;
    for (const auto& fx : corpus) {
        covers += fx.covers.size();
        for (const auto& c : fx.covers) {
            EXPECT_TRUE(refines(c, c).refines) << fx.name << " " << c.str();
            if (c.kind == CoverKind::zariski) {
                Polynomial sum;
                for (std::size_t i = 0; i < c.elements.size(); ++i) sum = sum + c.certificate[i] * c.elements[i].num();
                EXPECT_EQ(sum, Polynomial(1));
            }
        }
        for (const auto& a : fx.covers)
            for (const auto& b : fx.covers)
                for (const auto& c : fx.covers)
                    if (refines(a, b).refines && refines(b, c).refines) EXPECT_TRUE(refines(a, c).refines);
        std::ostringstream out;
        write_localizations(fx, out);
        EXPECT_EQ(out.str().find("equal=false"), std::string::npos) << out.str();
        for (const auto& v : fx.valuations) {
            std::vector<Polynomial> sample{Polynomial(1), Polynomial::T()};
            for (const auto& r : fx.rationals) {
                sample.push_back(r.denominator());
                for (const auto& f : r.numerators()) sample.push_back(f);
            }
            EXPECT_TRUE(valuation_axiom_check(v, sample).pass());
        }
    }
    EXPECT_GE(covers, 10u);
}
