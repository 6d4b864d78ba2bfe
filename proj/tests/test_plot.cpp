#include <anline/plot.hpp>
#include <anline/random.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace anline;

namespace {

std::size_t count(const std::vector<CellClass>& cells, CellClass c) { return std::count(cells.begin(), cells.end(), c); }

} // namespace

TEST(Plot, DiscCenterIsMember)
{
    PlotWindow w; // [-2,2]^2 at 1/64
    ASSERT_EQ(w.columns(), 256u);
    ASSERT_EQ(w.rows(), 256u);
    const auto cells = rasterize(parse_region("|T| <= 1"), w);
    EXPECT_EQ(cells[128 * 256 + 128], CellClass::member);
    EXPECT_EQ(cells[0], CellClass::nonmember);
    // area of the disc in cells, within the boundary band
    const double area = 3.14159265358979 * 64 * 64;
    EXPECT_LT(static_cast<double>(count(cells, CellClass::member)), area);
    EXPECT_GT(static_cast<double>(count(cells, CellClass::member) + count(cells, CellClass::boundary)), area);
}

TEST(Plot, CircleBandHasNoInteriorMembers)
{
    PlotWindow w;
    const auto cells = rasterize(parse_region("|T| <= 1 & |T| >= 1"), w);
    EXPECT_EQ(count(cells, CellClass::member), 0u);
    const std::size_t band = count(cells, CellClass::boundary);
    // circumference 2*pi*64 cells, each crossing touches at most a few cells
    EXPECT_GT(band, 400u);
    EXPECT_LT(band, 2000u);
    EXPECT_EQ(cells[128 * 256 + 128], CellClass::nonmember);
    EXPECT_EQ(cells[128 * 256 + 192], CellClass::boundary); // cell next to z = 1
}

TEST(Plot, EmptyAndFullAreUniform)
{
    PlotWindow w;
    w.step = 1.0 / 8;
    const auto e = rasterize(RegionExpr::empty(), w);
    EXPECT_EQ(count(e, CellClass::nonmember), e.size());
    const auto f = rasterize(RegionExpr::full(), w);
    EXPECT_EQ(count(f, CellClass::member), f.size());
}

TEST(Plot, MemberCellsAreSound)
{
    // every point of a member cell is in the region, every point of a nonmember cell is outside
    const RegionExpr R = parse_region("|T^2 - 1| < 1 | (|T - i| <= 1/2 & |T + 1/3| > 1)");
    PlotWindow w;
    w.step = 1.0 / 16;
    const auto cells = rasterize(R, w);
    Rng rng(11);
    int checked = 0;
    for (std::size_t j = 0; j < w.rows(); ++j) {
        for (std::size_t i = 0; i < w.columns(); ++i) {
            const CellClass c = cells[j * w.columns() + i];
            if (c == CellClass::boundary) continue;
            const auto z = w.center(i, j);
            for (int k = 0; k < 3; ++k) {
                const double dx = (rng.unit() - 0.5) * w.step, dy = (rng.unit() - 0.5) * w.step;
                const GaussianRational q{Rational(z.real() + dx), Rational(z.imag() + dy)};
                EXPECT_EQ(member_exact(R, q), c == CellClass::member);
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 10000);
}

TEST(Plot, WorkersDoNotChangeOutput)
{
    const RegionExpr R = parse_region("|T^3 - T| <= 1/2 | |T + 1| > 3/2");
    PlotWindow w;
    w.step = 1.0 / 32;
    const auto a = rasterize(R, w);
    w.workers = 5;
    EXPECT_EQ(a, rasterize(R, w));
}

TEST(Plot, PpmLayout)
{
    PlotWindow w{-1, -1, 1, 1, 1.0 / 4};
    const auto cells = rasterize(parse_region("|T| < 1/2"), w);
    std::ostringstream os;
    write_ppm(os, cells, w.columns(), w.rows());
    const std::string s = os.str();
    const std::string header = "P6\n8 8\n255\n";
    ASSERT_EQ(s.substr(0, header.size()), header);
    ASSERT_EQ(s.size(), header.size() + 8 * 8 * 3);
    const PlotStyle style;
    const std::size_t center = header.size() + (4 * 8 + 4) * 3;
    EXPECT_EQ(static_cast<std::uint8_t>(s[center]), style.member[0]);
    EXPECT_EQ(static_cast<std::uint8_t>(s[header.size()]), style.nonmember[0]);
}

TEST(Plot, SvgRuns)
{
    const std::vector<CellClass> cells{CellClass::member, CellClass::member, CellClass::nonmember, CellClass::boundary};
    std::ostringstream os;
    write_svg(os, cells, 4, 1);
    const std::string s = os.str();
    EXPECT_EQ(s.rfind("<svg", 0), 0u);
    EXPECT_NE(s.find("<rect x=\"0\" y=\"0\" width=\"2\" height=\"1\" fill=\"#2860b0\"/>"), std::string::npos) << s;
    EXPECT_NE(s.find("<rect x=\"3\" y=\"0\" width=\"1\" height=\"1\" fill=\"#e07020\"/>"), std::string::npos) << s;
    EXPECT_EQ(s.substr(s.size() - 7), "</svg>\n");
}

TEST(Plot, RejectsBadWindow)
{
    PlotWindow w{1, 0, 0, 1, 0.1};
    EXPECT_THROW(rasterize(RegionExpr::full(), w), region_error);
    PlotWindow z{0, 0, 1, 1, 0};
    EXPECT_THROW(rasterize(RegionExpr::full(), z), region_error);
}
