// Split a Laurent polynomial on the annulus into its disc and outer parts,
// then divide a kernel element by (T - U).

#include <anline/anline.hpp>

#include <iostream>

using namespace anline;

int main()
{
    using ER = RingElement<Exact>;
    const auto h = ER::two_sided(parse_series<Exact>("2:1 0:3 -1:1/2 -3:-1"), Rational(3, 2), Rational(2, 3));
    const auto sp = laurent_split(h);
    std::cout << "h = " << h.str() << '\n';
    std::cout << "f = " << sp.nonnegative.str() << "  |f| = " << sp.norm_f.str() << '\n';
    std::cout << "g = " << sp.negative.str() << "  |g| = " << sp.norm_g.str() << '\n';
    std::cout << "|h| = " << sp.norm_h.str() << '\n';

    Rng rng(7);
    const Rational r(9, 10);
    const auto c = random_module_element(rng, r, 3, 3);
    const auto res = divide_by_T_minus_U(c.times_T_minus_U());
    std::cout << "\nc       = " << c.str() << '\n';
    std::cout << "b/(T-U) = " << res.quotient.str() << '\n';
    std::cout << "|c| = " << res.norm_quotient.to_double() << " <= " << res.bound.to_double() << " ("
              << to_string(res.bounded) << ")\n";
}
