// Rational localizations and covers of C[T], and where a few valuations land.

#include <anline/anline.hpp>

#include <iostream>

using namespace anline;

int main()
{
    const HuberPair base;
    const Polynomial T = Polynomial::T();
    const auto disc = rational_localize(base, {T}, Polynomial(1));
    const auto outside = rational_localize(base, {Polynomial(1)}, T);
    std::cout << "|T| <= 1 : " << disc.str() << '\n';
    std::cout << "|T| >= 1 : " << outside.str() << '\n';

    for (const auto& c : generate_covers(base, RationalFunction(T), {T, T - Polynomial(1)})) c.write(std::cout);

    const RationalSubsetSpec unit_disc({T}, Polynomial(1));
    for (const auto& v : {Valuation::order_at(GaussianRational(0), Rational(1, 2)), Valuation::trivial_at(GaussianRational(3)),
                          Valuation::trivial_generic()}) {
        std::cout << v.str() << " in " << unit_disc.str() << ": " << to_string(spa_membership(v, base, unit_disc)) << '\n';
    }
}
