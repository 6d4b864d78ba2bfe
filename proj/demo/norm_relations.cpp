// Falsification run of the six norm relations for a chosen pair f, g, and a
// picture of |f| <= 1 against |g| <= 1.
//
//   norm_relations [f] [g] [out.ppm]

#include <anline/anline.hpp>

#include <fstream>
#include <iostream>

using namespace anline;

int main(int argc, char** argv)
{
    GagaConfig cfg;
    cfg.f = parse_polynomial(argc > 1 ? argv[1] : "T^2 - 1");
    cfg.g = parse_polynomial(argc > 2 ? argv[2] : "T + i");
    Sampler smp;
    smp.random_points = 2000;
    for (const auto& item : gaga_axiom_suite(cfg, smp)) {
        std::cout << item.item << "  " << item.verdict.str() << "\n   " << item.relation << '\n';
    }

    const RegionExpr both = meet(RegionExpr::atom(cfg.f, Rel::le, Rational(1)), RegionExpr::atom(cfg.g, Rel::le, Rational(1)));
    PlotWindow w{-2.5, -2.5, 2.5, 2.5, 1.0 / 40};
    const std::string path = argc > 3 ? argv[3] : "norm_relations.ppm";
    std::ofstream out(path, std::ios::binary);
    write_ppm(out, rasterize(both, w), w.columns(), w.rows());
    std::cout << "region " << both.str() << " -> " << path << '\n';
}
