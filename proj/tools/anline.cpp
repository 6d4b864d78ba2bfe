// anline: series calculator, certificate runners, norm-relation reports,
// site explorer and region plots.
//
// Exit codes: 0 success, 1 check failed or counterexample found, 2 usage or
// parse error, 3 I/O error, 4 precondition failure in the core library.

#include <anline/acceptance.hpp>
#include <anline/berkovich.hpp>
#include <anline/fixture.hpp>
#include <anline/literal.hpp>
#include <anline/plot.hpp>
#include <anline/rings.hpp>
#include <anline/sampler.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef ANLINE_DEFAULT_FIXTURE_DIR
#define ANLINE_DEFAULT_FIXTURE_DIR "data/fixtures"
#endif

using namespace anline;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, io = 3, precondition = 4 };

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string backend = "exact";
    std::uint64_t seed = 0;
    std::string window = "-4,-4,4,4";
    std::string grid_step = "1/32";
    std::size_t random_points = 10000;
    int cap = default_degree_cap;
    std::string out;
    unsigned workers = 1;
    bool no_exact_fallback = false;
};

double parse_number(const std::string& s, const char* what)
{
    try {
        return parse_rational(s).get_d();
    } catch (const std::exception&) {
        throw usage_error(std::string("bad ") + what + " '" + s + "'");
    }
}

Sampler make_sampler(const Options& o)
{
    Sampler s;
    const auto parts = split_top_level(o.window, ',');
    if (parts.size() != 4) throw usage_error("--window expects x0,y0,x1,y1");
    s.x0 = parse_number(parts[0], "window");
    s.y0 = parse_number(parts[1], "window");
    s.x1 = parse_number(parts[2], "window");
    s.y1 = parse_number(parts[3], "window");
    s.grid_step = parse_number(o.grid_step, "grid step");
    s.random_points = o.random_points;
    s.seed = o.seed;
    s.workers = o.workers;
    s.exact_fallback = !o.no_exact_fallback;
    try {
        s.validate();
    } catch (const region_error& e) {
        throw usage_error(e.what());
    }
    return s;
}

// Report sink: stdout, or the --out file.
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (path.empty()) return;
        file_.open(path, std::ios::binary);
        if (!file_) throw io_error("cannot write " + path);
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    void close(const std::string& path)
    {
        if (!file_.is_open()) return;
        file_.close();
        if (!file_) throw io_error("error writing " + path);
    }

private:
    std::ofstream file_;
};

// `series` arguments: expressions plus trailing key=value parameters.
struct SeriesArgs {
    std::vector<std::string> exprs;
    std::map<std::string, std::string> params;

    std::optional<Rational> rational(const std::string& key) const
    {
        auto it = params.find(key);
        if (it == params.end()) return std::nullopt;
        return parse_rational(it->second);
    }
};

SeriesArgs split_series_args(const std::vector<std::string>& raw)
{
    SeriesArgs a;
    for (const auto& t : raw) {
        const auto eq = t.find('=');
        const bool param = eq != std::string::npos && eq > 0 && t.find(':') == std::string::npos &&
                           t.find(' ') == std::string::npos &&
                           std::all_of(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(eq), [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; });
        if (param) {
            a.params[t.substr(0, eq)] = t.substr(eq + 1);
        } else {
            a.exprs.push_back(t);
        }
    }
    return a;
}

template <Backend B>
int cmd_series(const std::string& action, const SeriesArgs& args, int cap, std::ostream& os)
{
    using ES = WeightedSeries<B>;
    using ER = RingElement<B>;
    auto need = [&](std::size_t n) {
        if (args.exprs.size() != n) {
            throw usage_error("series " + action + " expects " + std::to_string(n) + " expression" + (n == 1 ? "" : "s"));
        }
    };
    const auto r = args.rational("r");

    if (action == "norm") {
        need(1);
        const ES s = parse_series<B>(args.exprs[0], r, cap);
        os << "norm=" << weighted_norm(s).str() << " r=" << B::real_str(s.radius()) << '\n';
        return ok;
    }
    if (action == "mul") {
        need(2);
        const ES a = parse_series<B>(args.exprs[0], r, cap), b = parse_series<B>(args.exprs[1], r, cap);
        const ES p = a * b;
        const auto np = weighted_norm(p), bound = weighted_norm(a) * weighted_norm(b);
        os << "product=" << format_series(p) << '\n';
        os << "norm=" << np.str() << " bound=" << bound.str() << " bounded=" << to_string(certify_le(np, bound)) << '\n';
        return ok;
    }
    if (action == "eval") {
        need(1);
        const ES s = parse_series<B>(args.exprs[0], r, cap);
        auto zt = args.params.find("z");
        if (zt == args.params.end()) throw usage_error("series eval needs z=<scalar>");
        const auto z = B::scalar_from(parse_coefficient(zt->second));
        const auto v = eval(s, z);
        const auto m = B::modulus(v), n = weighted_norm(s);
        os << "value=" << B::scalar_str(v) << '\n';
        // |f(z)| <= |f|_r only inside the closed disc of radius r
        if (B::norm2(z) <= s.radius() * s.radius()) {
            os << "modulus=" << m.str() << " bound=" << n.str() << " bounded=" << to_string(certify_le(m, n)) << '\n';
        } else {
            os << "modulus=" << m.str() << " bound=none outside_radius=" << B::real_str(s.radius()) << '\n';
        }
        return ok;
    }
    if (action == "split") {
        need(1);
        const auto lit = parse_series_literal(args.exprs[0]);
        const Rational outer = args.rational("outer").value_or(lit.rational_param("outer").value_or(Rational(2)));
        const Rational inner = args.rational("inner").value_or(lit.rational_param("inner").value_or(Rational(1, 2)));
        const auto h = ER::two_sided(make_series<B>(lit, outer, cap), B::real_from(outer), B::real_from(inner));
        const auto sp = laurent_split(h);
        os << "(" << format_terms(sp.nonnegative.series()) << ", " << format_terms(sp.negative.series()) << ")\n";
        os << "norm_h=" << sp.norm_h.str() << " norm_f=" << sp.norm_f.str() << " norm_g=" << sp.norm_g.str()
           << " f_bounded=" << to_string(sp.f_bounded) << " g_bounded=" << to_string(sp.g_bounded) << '\n';
        return ok;
    }
    if (action == "divide") {
        need(1);
        const Rational rr = r.value_or(Rational(1, 2));
        std::vector<ES> entries;
        for (const auto& part : split_top_level(args.exprs[0], ';')) entries.push_back(parse_series<B>(part, rr, cap));
        const ModuleElement<B> b(std::move(entries), B::real_from(rr));
        const auto res = divide_by_T_minus_U(b);
        os << "quotient=" << res.quotient.str() << '\n';
        os << "norm_b=" << res.norm_dividend.str() << " norm_c=" << res.norm_quotient.str() << " bound=" << res.bound.str()
           << " bounded=" << to_string(res.bounded) << '\n';
        return ok;
    }
    if (action == "pair") {
        need(2);
        const Rational rr = r.value_or(Rational(1, 2));
        const ES f = parse_series<B>(args.exprs[0], rr, cap);
        const auto g = ER::outer_tail(parse_series<B>(args.exprs[1], rr, cap));
        const auto p = dual_pairing(f, g);
        os << "value=" << B::scalar_str(p.value) << '\n';
        os << "modulus=" << p.modulus.str() << " bound=" << p.bound.str() << " bounded=" << to_string(p.bounded) << '\n';
        return ok;
    }
    throw usage_error("unknown series action '" + action + "' (norm, mul, eval, split, divide, pair)");
}

Polynomial poly_arg(const std::string& s) { return parse_polynomial(s); }

int cmd_axioms(const GagaConfig& g, const Sampler& s, std::ostream& os)
{
    const auto items = gaga_axiom_suite(g, s);
    bool all = true;
    for (const auto& it : items) {
        os << "item=" << it.item << " verdict=" << it.verdict.str() << " relation=" << it.relation << '\n';
        all = all && !it.verdict.counterexample;
    }
    os << "result=" << (all ? "pass" : "counterexample") << '\n';
    return all ? ok : failed;
}

int cmd_site(const std::string& path, const std::string& action, std::ostream& os)
{
    SiteFixture fx;
    try {
        fx = load_site_fixture(path);
    } catch (const std::filesystem::filesystem_error& e) {
        throw io_error(std::string(e.what()));
    }
    if (action == "localize") {
        write_localizations(fx, os);
    } else if (action == "covers") {
        write_covers(fx, os);
    } else if (action == "refine") {
        write_refinements(fx, os);
    } else if (action == "spa") {
        write_spa(fx, os);
    } else {
        throw usage_error("unknown site action '" + action + "' (localize, covers, refine, spa)");
    }
    return ok;
}

int cmd_plot(const std::string& region, const Options& o, std::string format)
{
    if (o.out.empty()) throw usage_error("plot needs --out <file>");
    const Sampler s = make_sampler(o);
    if (!(s.grid_step > 0)) throw usage_error("plot needs a positive --grid-step");
    const RegionExpr R = parse_region(region);
    if (format.empty()) format = std::filesystem::path(o.out).extension() == ".svg" ? "svg" : "ppm";
    PlotWindow w{s.x0, s.y0, s.x1, s.y1, s.grid_step, o.workers};
    try {
        w.validate();
    } catch (const region_error& e) {
        throw usage_error(e.what());
    }
    const auto cells = rasterize(R, w);
    Output out(o.out);
    if (format == "ppm") {
        write_ppm(out.stream(), cells, w.columns(), w.rows());
    } else if (format == "svg") {
        write_svg(out.stream(), cells, w.columns(), w.rows());
    } else {
        throw usage_error("unknown plot format '" + format + "' (ppm, svg)");
    }
    out.close(o.out);
    std::size_t member = 0, boundary = 0;
    for (auto c : cells) {
        member += c == CellClass::member;
        boundary += c == CellClass::boundary;
    }
    std::cout << "wrote " << o.out << " format=" << format << " columns=" << w.columns() << " rows=" << w.rows()
              << " member=" << member << " boundary=" << boundary << '\n';
    return ok;
}

int cmd_selftest(const Options& o, const std::string& fixtures, std::ostream& os)
{
    AcceptanceConfig cfg;
    cfg.seed = o.seed;
    cfg.cap = o.cap;
    cfg.fixture_dir = fixtures;
    cfg.sampler = make_sampler(o);
    cfg.workers = o.workers;
    std::vector<CriterionResult> rs;
    try {
        rs = run_acceptance(cfg, &os);
    } catch (const std::filesystem::filesystem_error& e) {
        throw io_error(e.what());
    } catch (const fixture_error& e) {
        throw io_error(e.what());
    }
    write_summary(rs, os);
    for (const auto& r : rs) {
        if (!r.pass) return failed;
    }
    return ok;
}

int cmd_strictness(const Rational& r, std::size_t trials, int degree, const Options& o, std::ostream& os)
{
    const auto rep = strictness_certificate(r, trials, std::min(degree, o.cap), o.seed);
    rep.write(os);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.12g", rep.max_ratio);
    os << "summary radius=" << r.get_str() << " trials=" << rep.records.size() << " max_ratio=" << buf
       << " bound=" << Rational(1 / (1 - r)).get_str() << " violations=" << rep.violations << '\n';
    return rep.pass() ? ok : failed;
}

int cmd_spectrum(const std::vector<std::string>& relations, std::ostream& os)
{
    AlgebraDescriptor A;
    for (const auto& s : relations) A.relations.push_back(parse_polynomial(s));
    gelfand_points(A).write(os);
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"anline: certified computations on the complex line"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read `key = value` options from a file; command-line flags take precedence");

    Options o;
    app.add_option("--backend", o.backend, "Arithmetic backend for `series`")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--seed", o.seed, "Seed for every randomized step");
    app.add_option("--window", o.window, "Sampling or plot window x0,y0,x1,y1");
    app.add_option("--grid-step", o.grid_step, "Grid spacing (rational or decimal; 0 disables the grid)");
    app.add_option("--random-points", o.random_points, "Number of seeded random sample points");
    app.add_option("--cap", o.cap, "Degree cap for series and for the self-test")->check(CLI::PositiveNumber);
    app.add_option("--out", o.out, "Write the report or image to this file");
    app.add_option("--workers", o.workers, "Sampling threads (output does not depend on this)")->check(CLI::PositiveNumber);
    app.add_flag("--no-exact-fallback", o.no_exact_fallback, "Leave boundary points undecided instead of deciding them exactly");

    std::string series_action;
    std::vector<std::string> series_raw;
    auto* series = app.add_subcommand("series", "Series calculator: norm, mul, eval, split, divide, pair");
    series->add_option("action", series_action, "norm | mul | eval | split | divide | pair")->required();
    series->add_option("args", series_raw, "Expressions followed by key=value parameters (r=, z=, outer=, inner=)")->required();

    GagaConfig gcfg;
    std::string f_text = "T", g_text = "T+1", alpha_text = "1/2", r_text = "1", s_text = "1", r3_text = "1/2";
    auto* axioms = app.add_subcommand("axioms", "Falsification run of the six norm relations");
    axioms->add_option("--f", f_text, "Polynomial f");
    axioms->add_option("--g", g_text, "Polynomial g");
    axioms->add_option("--alpha", alpha_text, "Nonzero scalar alpha");
    axioms->add_option("--r", r_text, "Radius r > 0");
    axioms->add_option("--s", s_text, "Radius s > 0");
    axioms->add_option("--r3", r3_text, "Radius in (0, 1) for the disjointness relation");
    axioms->add_option("--negate", gcfg.negate, "Replace relation 6 by a false variant (test mode)");

    std::string plot_region, plot_format;
    auto* plot = app.add_subcommand("plot", "Rasterize a region to PPM or SVG");
    plot->add_option("region", plot_region, "Region expression, e.g. \"|T| <= 1 & |T-1| > 1/2\"")->required();
    plot->add_option("--format", plot_format, "ppm or svg (default from the --out extension)");

    std::string site_path, site_action;
    auto* site = app.add_subcommand("site", "Huber-pair fixture explorer");
    site->add_option("fixture", site_path, "Fixture file (.site)")->required();
    site->add_option("action", site_action, "localize | covers | refine | spa")->required();

    std::string fixtures = ANLINE_DEFAULT_FIXTURE_DIR;
    auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
    selftest->add_option("--fixtures", fixtures, "Directory of .site fixtures");

    std::string strict_r = "1/2";
    std::size_t strict_trials = 100;
    int strict_degree = 20;
    auto* strictness = app.add_subcommand("strictness", "Randomized division-bound certificate");
    strictness->add_option("--radius", strict_r, "Radius in (0, 1)");
    strictness->add_option("--trials", strict_trials, "Number of trials");
    strictness->add_option("--degree", strict_degree, "Maximum U- and T-degree")->check(CLI::NonNegativeNumber);

    std::vector<std::string> relations;
    auto* spectrum = app.add_subcommand("spectrum", "Points of C[T]/(relations)");
    spectrum->add_option("relations", relations, "Relation polynomials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::FileError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return io;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }

    try {
        if (*plot) return cmd_plot(plot_region, o, plot_format);

        Output out(o.out);
        int code = ok;
        if (*series) {
            const auto args = split_series_args(series_raw);
            code = o.backend == "float" ? cmd_series<Float>(series_action, args, o.cap, out.stream())
                                        : cmd_series<Exact>(series_action, args, o.cap, out.stream());
        } else if (*axioms) {
            try {
                gcfg.f = poly_arg(f_text);
                gcfg.g = poly_arg(g_text);
                gcfg.alpha = parse_coefficient(alpha_text);
                gcfg.r = parse_rational(r_text);
                gcfg.s = parse_rational(s_text);
                gcfg.r3 = parse_rational(r3_text);
            } catch (const std::invalid_argument& e) {
                throw usage_error(e.what());
            }
            code = cmd_axioms(gcfg, make_sampler(o), out.stream());
        } else if (*site) {
            code = cmd_site(site_path, site_action, out.stream());
        } else if (*selftest) {
            code = cmd_selftest(o, fixtures, out.stream());
        } else if (*strictness) {
            code = cmd_strictness(parse_rational(strict_r), strict_trials, strict_degree, o, out.stream());
        } else if (*spectrum) {
            code = cmd_spectrum(relations, out.stream());
        }
        out.close(o.out);
        return code;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return usage;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return io;
    } catch (const fixture_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return io;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return precondition;
    }
}
