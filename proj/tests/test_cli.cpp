#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(ANLINE_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("anline_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir / name;
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

const std::string fixtures = ANLINE_FIXTURE_DIR;

} // namespace

TEST(CliSeries, SplitPrintsPairAndNorms)
{
    const auto r = run("series split \"1:1 0:1 -1:1\"");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "(1:1 0:1, -1:-1)");
    EXPECT_TRUE(contains(r.out, "f_bounded=holds g_bounded=holds"));
}

TEST(CliSeries, NormAtRadiusTwo)
{
    EXPECT_EQ(run("series norm \"0:1 1:1\" r=2").out, "norm=3 r=2\n");
    EXPECT_EQ(run("--backend float series norm \"0:1 1:1\" r=2").out, "norm=3 r=2\n");
}

TEST(CliSeries, DivideKernelElement)
{
    const auto r = run("series divide \"1:1 ; 0:-1\"");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "quotient=0:1\n"));
    EXPECT_TRUE(contains(r.out, "norm_b=3/2 norm_c=1 bound=3 bounded=holds"));
}

TEST(CliSeries, ErrorsMapToExitCodes)
{
    EXPECT_EQ(run("series divide \"0:1 ; 0:1\"").code, 4); // not in the kernel
    EXPECT_EQ(run("series norm \"0:x\"").code, 2);
    EXPECT_EQ(run("series frobnicate \"0:1\"").code, 2);
    EXPECT_EQ(run("nosuchcommand").code, 2);
    EXPECT_EQ(run("series norm \"0:1\" --out /nonexistent-dir/x.txt").code, 3);
}

TEST(CliAxioms, DefaultsPass)
{
    const auto r = run("axioms --random-points 2000");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "result=pass"));
}

TEST(CliAxioms, NegatedRelationFindsCounterexample)
{
    const auto r = run("axioms --negate 6 --f T --g 1");
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.out, "item=6 verdict=Counterexample"));
}

TEST(CliAxioms, EmptySamplerIsVacuous)
{
    const auto r = run("axioms --grid-step 0 --random-points 0");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "samples=0 undecided=0 vacuous"));
}

TEST(CliAxioms, ConfigurationErrorsAreUsageErrors)
{
    EXPECT_EQ(run("axioms --alpha 0").code, 2);
    EXPECT_EQ(run("axioms --r3 1").code, 2);
    EXPECT_EQ(run("axioms --negate 3").code, 2);
    EXPECT_EQ(run("axioms --window 1,1,0,0").code, 2);
}

TEST(CliAxioms, ConfigFileWithFlagOverride)
{
    const auto cfg = scratch("run.ini");
    std::ofstream(cfg) << "grid-step = 0\nrandom-points = 0\n";
    auto r = run("--config " + cfg.string() + " axioms");
    EXPECT_TRUE(contains(r.out, "samples=0 undecided=0 vacuous"));
    r = run("--config " + cfg.string() + " axioms --random-points 7");
    EXPECT_TRUE(contains(r.out, "samples=7 undecided=0\n") || contains(r.out, "samples=7 undecided=0 relation"));
    EXPECT_EQ(run("--config /nonexistent.ini axioms").code, 3);
}

TEST(CliPlot, DiscCenterIsMemberColor)
{
    const auto img = scratch("disc.ppm");
    const auto r = run("plot \"|T| <= 1\" --window -2,-2,2,2 --grid-step 1/64 --out " + img.string());
    ASSERT_EQ(r.code, 0);
    const std::string ppm = slurp(img);
    const std::string header = "P6\n256 256\n255\n";
    ASSERT_EQ(ppm.substr(0, header.size()), header);
    ASSERT_EQ(ppm.size(), header.size() + 256 * 256 * 3);
    auto pixel = [&](std::size_t i, std::size_t j) { return ppm.substr(header.size() + (j * 256 + i) * 3, 3); };
    EXPECT_EQ(pixel(128, 128), std::string("\x28\x60\xb0", 3));
    EXPECT_EQ(pixel(0, 0), std::string("\xff\xff\xff", 3));
}

TEST(CliPlot, CircleBandAndEmptyRegion)
{
    const auto band = scratch("band.ppm");
    ASSERT_EQ(run("plot \"|T| <= 1 & |T| >= 1\" --window -2,-2,2,2 --grid-step 1/64 --out " + band.string()).code, 0);
    const std::string b = slurp(band);
    EXPECT_EQ(b.find(std::string("\x28\x60\xb0", 3)), std::string::npos); // no member cells
    EXPECT_NE(b.find(std::string("\xe0\x70\x20", 3)), std::string::npos); // boundary cells present

    const auto empty = scratch("empty.ppm");
    ASSERT_EQ(run("plot Empty --window -1,-1,1,1 --grid-step 1/8 --out " + empty.string()).code, 0);
    const std::string e = slurp(empty);
    const std::string header = "P6\n16 16\n255\n";
    EXPECT_EQ(e.substr(header.size()), std::string(16 * 16 * 3, '\xff'));
}

TEST(CliPlot, ByteIdenticalAcrossRunsAndWorkers)
{
    const auto a = scratch("a.svg"), b = scratch("b.svg");
    const std::string region = "\"|T^2 - 1| < 1 | |T - i| <= 1/2\"";
    ASSERT_EQ(run("plot " + region + " --out " + a.string()).code, 0);
    ASSERT_EQ(run("plot " + region + " --workers 3 --out " + b.string()).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a).rfind("<svg", 0), 0u);
    EXPECT_EQ(run("plot \"|T| <= 1\" --out /nonexistent-dir/p.ppm").code, 3);
    EXPECT_EQ(run("plot \"|T| <=\" --out " + a.string()).code, 2);
}

TEST(CliSite, CoversRefineSpa)
{
    const std::string fx = fixtures + "/affine_line.site";
    const auto covers = run("site " + fx + " covers");
    EXPECT_EQ(covers.code, 0);
    EXPECT_TRUE(contains(covers.out, "cover twopiece(T) base ring=C[T] inverted= aplus=1\n"
                                     "  member 0 adjoin T : ring=C[T] inverted= aplus=1,T\n"
                                     "  member 1 invert T : ring=C[T] inverted=T aplus=1,1/T\n"));
    EXPECT_TRUE(contains(run("site " + fx + " refine").out, "refine 0 0 refines=true assignment=0->0,1->1\n"));
    EXPECT_TRUE(contains(run("site " + fx + " spa").out, "spa order 0 1/2 in (T ; 1) -> member\n"));
    EXPECT_TRUE(contains(run("site " + fx + " localize").out, "localize 1 ; T -> ring=C[T] inverted=T aplus=1,1/T\n"));
    EXPECT_EQ(run("site /nonexistent.site covers").code, 3);
    EXPECT_EQ(run("site " + fx + " explode").code, 2);
}

TEST(CliSpectrum, PointsAndSpecialCases)
{
    const auto r = run("spectrum \"T^2 + 1\"");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "0 -1 ") && contains(r.out, "0 1 "));
    EXPECT_EQ(run("spectrum").out, "all-of-C\n");
    EXPECT_EQ(run("spectrum 1").out, "empty\n");
}

TEST(CliStrictness, SeededReport)
{
    const auto a = run("strictness --radius 3/4 --trials 20 --degree 6 --seed 9");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, run("strictness --radius 3/4 --trials 20 --degree 6 --seed 9").out);
    EXPECT_TRUE(contains(a.out, "summary radius=3/4 trials=20"));
    EXPECT_TRUE(contains(a.out, "violations=0\n"));
}

TEST(CliSelftest, CorruptedFixturesGiveIoCode)
{
    EXPECT_EQ(run("selftest --fixtures /nonexistent-fixtures").code, 3);
    const auto dir = scratch("badfx");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "x.site") << "cover = bogus T\n";
    EXPECT_EQ(run("selftest --fixtures " + dir.string()).code, 3);
}

TEST(CliSelftest, ScaledDownRunPassesAndIsDeterministic)
{
    const std::string args = "selftest --cap 4 --grid-step 1/4 --random-points 500";
    const auto a = run(args);
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_TRUE(contains(a.out, "summary passed=10 failed=0"));
    const auto b = run(args);
    EXPECT_EQ(a.out, b.out);
}
