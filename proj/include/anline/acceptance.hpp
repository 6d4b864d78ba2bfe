#pragma once

// Acceptance suite: ten property checks with a deterministic report. The
// report depends only on the configuration (never on timing or worker count).

#include <anline/berkovich.hpp>
#include <anline/fixture.hpp>
#include <anline/huber.hpp>
#include <anline/random.hpp>
#include <anline/rings.hpp>
#include <anline/sampler.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace anline {

struct AcceptanceConfig {
    std::uint64_t seed = 0;
    int cap = default_degree_cap; // degree limits below are clamped to this
    std::filesystem::path fixture_dir;
    Sampler sampler;
    unsigned workers = 1;
    bool determinism = true; // criterion 10 reruns 1-9
};

struct CriterionResult {
    int id = 0;
    std::string key;
    bool pass = false;
    std::string details;

    std::string str() const
    {
        return "criterion " + std::to_string(id) + " " + key + " " + (pass ? "PASS" : "FAIL") +
               (details.empty() ? "" : " " + details);
    }
};

namespace detail {

inline std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// Run body(w) for w in [0, workers) on threads.
template <class F>
void parallel(unsigned workers, F body)
{
    workers = std::max(1u, workers);
    if (workers == 1) {
        body(0u);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
}

inline Polynomial random_polynomial(Rng& rng, int max_degree, long bound)
{
    for (;;) {
        const int d = static_cast<int>(rng.uniform(0, max_degree));
        std::vector<GaussianRational> c;
        for (int k = 0; k <= d; ++k) c.push_back(rng.gaussian_integer(bound));
        Polynomial p(std::move(c));
        if (!p.is_zero()) return p;
    }
}

inline CriterionResult division_bound(const AcceptanceConfig& cfg)
{
    const int degree = std::min(20, cfg.cap);
    const std::vector<Rational> radii{Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(9, 10)};
    constexpr std::size_t trials = 1000;
    std::size_t violations = 0, total = 0;
    std::string ratios;
    for (const auto& r : radii) {
        std::vector<StrictnessReport> parts(std::max(1u, cfg.workers));
        parallel(cfg.workers, [&](unsigned w) {
            const std::size_t n = parts.size();
            const std::size_t a = trials * w / n, b = trials * (w + 1) / n;
            parts[w] = strictness_certificate(r, b - a, degree, cfg.seed, a);
        });
        StrictnessReport rep = parts[0];
        for (std::size_t k = 1; k < parts.size(); ++k) rep.merge(parts[k]);
        violations += rep.violations;
        total += rep.records.size();
        ratios += " max_ratio[" + r.get_str() + "]=" + fmt("%.6f", rep.max_ratio);
    }
    return {1, "division-bound", violations == 0,
            "trials=" + std::to_string(total) + " degree<=" + std::to_string(degree) + " violations=" +
                std::to_string(violations) + ratios};
}

inline CriterionResult division_exhaustive(const AcceptanceConfig& cfg)
{
    const int degree = std::min(6, cfg.cap);
    const Rational r(1, 2);
    std::vector<std::pair<int, int>> slots; // (U-power, T-power)
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; i + j <= degree; ++j) slots.emplace_back(i, j);
    std::vector<GaussianRational> values;
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            if (a || b) values.emplace_back(Rational(a), Rational(b));

    auto build = [&](const std::vector<std::pair<std::size_t, std::size_t>>& picks) {
        int top = 0;
        for (auto [s, v] : picks) top = std::max(top, slots[s].first);
        std::vector<std::vector<GaussianRational>> coeffs(static_cast<std::size_t>(top) + 1);
        for (auto [s, v] : picks) {
            auto& c = coeffs[static_cast<std::size_t>(slots[s].first)];
            const auto j = static_cast<std::size_t>(slots[s].second);
            if (c.size() <= j) c.resize(j + 1);
            c[j] = values[v];
        }
        std::vector<WeightedSeries<Exact>> entries;
        for (auto& c : coeffs) entries.emplace_back(0, std::move(c), r);
        return ModuleElement<Exact>(std::move(entries), r);
    };

    const std::size_t ns = slots.size(), nv = values.size();
    const std::size_t singles = ns * nv;
    const std::size_t pairs = ns * (ns - 1) / 2 * nv * nv;
    const std::size_t total = 1 + singles + pairs;
    std::vector<std::pair<std::size_t, std::size_t>> pair_index;
    for (std::size_t a = 0; a < ns; ++a)
        for (std::size_t b = a + 1; b < ns; ++b) pair_index.emplace_back(a, b);

    std::vector<std::size_t> bad(std::max(1u, cfg.workers), 0);
    std::vector<std::size_t> first_bad(bad.size(), total);
    parallel(cfg.workers, [&](unsigned w) {
        for (std::size_t k = w; k < total; k += bad.size()) {
            std::vector<std::pair<std::size_t, std::size_t>> picks;
            if (k == 0) {
            } else if (k <= singles) {
                picks.emplace_back((k - 1) / nv, (k - 1) % nv);
            } else {
                const std::size_t m = k - 1 - singles;
                const auto [a, b] = pair_index[m / (nv * nv)];
                picks.emplace_back(a, m % (nv * nv) / nv);
                picks.emplace_back(b, m % nv);
            }
            const auto c = build(picks);
            const auto b = c.times_T_minus_U();
            const auto res = divide_by_T_minus_U(b);
            const bool ok = res.quotient == c && res.quotient.times_T_minus_U() == b && res.bounded == Certainty::holds;
            if (!ok) {
                ++bad[w];
                first_bad[w] = std::min(first_bad[w], k);
            }
        }
    });
    std::size_t violations = 0, first = total;
    for (std::size_t w = 0; w < bad.size(); ++w) {
        violations += bad[w];
        first = std::min(first, first_bad[w]);
    }
    std::string d = "cases=" + std::to_string(total) + " degree<=" + std::to_string(degree) + " r=1/2 violations=" +
                    std::to_string(violations);
    if (violations) d += " first_case=" + std::to_string(first);
    return {2, "division-exhaustive", violations == 0, d};
}

inline CriterionResult laurent_split_check(const AcceptanceConfig& cfg)
{
    using ES = WeightedSeries<Exact>;
    using ER = RingElement<Exact>;
    const int degree = std::min(10, cfg.cap);
    std::size_t violations = 0;
    for (std::size_t t = 0; t < 1000; ++t) {
        Rng rng(cfg.seed ^ 0x3a11, t);
        const int lo = static_cast<int>(rng.uniform(-degree, 0));
        const int hi = static_cast<int>(rng.uniform(0, degree));
        std::vector<GaussianRational> c;
        for (int n = lo; n <= hi; ++n) c.push_back(rng.gaussian_integer(4));
        const Rational outer = 1 + Rational(rng.uniform(1, 16), 16);
        const Rational inner(rng.uniform(1, 15), 16);
        const auto h = ER::two_sided(ES(lo, c, outer), outer, inner);
        const auto sp = laurent_split(h);
        const auto diff = sp.nonnegative.series().with_radius(1) - sp.negative.series().with_radius(1);
        bool ok = diff.same_coefficients(h.series().with_radius(1)) && sp.f_bounded == Certainty::holds &&
                  sp.g_bounded == Certainty::holds;
        // a polynomial lies in both rings and is recovered from the pair
        const auto p = sp.nonnegative.series();
        const auto rec = recover_polynomial(ER::overconvergent(p), ER::outer_tail(p.with_radius(inner)));
        ok = ok && rec.equal() && rec.polynomial->same_coefficients(p);
        if (!ok) ++violations;
    }
    return {3, "laurent-split", violations == 0,
            "elements=1000 degree<=" + std::to_string(degree) + " violations=" + std::to_string(violations)};
}

inline CriterionResult pairing_bound(const AcceptanceConfig& cfg)
{
    using ES = WeightedSeries<Exact>;
    using ER = RingElement<Exact>;
    const int degree = std::min(12, cfg.cap);
    std::size_t violations = 0, pairs = 0;
    for (const Rational r : {Rational(1, 2), Rational(3, 4)}) {
        for (std::size_t t = 0; t < 1000; ++t) {
            Rng rng(cfg.seed ^ 0x9a12, t + (r == Rational(1, 2) ? 0 : 1000));
            std::vector<GaussianRational> a, b;
            const int da = static_cast<int>(rng.uniform(0, degree)), db = static_cast<int>(rng.uniform(0, degree));
            for (int n = 0; n <= da; ++n) a.push_back(rng.gaussian_integer(6));
            for (int n = 0; n <= db; ++n) b.push_back(rng.gaussian_integer(6));
            const ES f(0, a, r);
            const auto g = ER::outer_tail(ES(-(db + 1), b, r));
            const auto p = dual_pairing(f, g);
            // independent recomputation of the value
            GaussianRational v;
            for (int n = 0; n <= std::min(da, db); ++n) {
                v += a[static_cast<std::size_t>(n)] * b[static_cast<std::size_t>(db - n)];
            }
            if (!(p.value == v) || p.bounded != Certainty::holds) ++violations;
            ++pairs;
        }
    }
    return {4, "duality-pairing", violations == 0,
            "pairs=" + std::to_string(pairs) + " radii=1/2,3/4 violations=" + std::to_string(violations)};
}

inline CriterionResult norm_relations(const AcceptanceConfig& cfg)
{
    const int degree = std::min(5, cfg.cap);
    Sampler smp = cfg.sampler;
    smp.workers = cfg.workers;
    std::size_t failures = 0, samples = 0, undecided = 0;
    std::string first;
    for (std::size_t t = 0; t < 100; ++t) {
        Rng rng(cfg.seed ^ 0x5ca1, t);
        GagaConfig g;
        g.f = random_polynomial(rng, degree, 3);
        g.g = random_polynomial(rng, degree, 3);
        do {
            g.alpha = GaussianRational(rng.rational(4, 3), rng.rational(4, 3));
        } while (g.alpha.is_zero());
        g.r = Rational(rng.uniform(1, 16), 8);
        g.s = Rational(rng.uniform(1, 16), 8);
        g.r3 = Rational(rng.uniform(1, 7), 8);
        for (const auto& item : gaga_axiom_suite(g, smp)) {
            samples += item.verdict.samples;
            undecided += item.verdict.undecided;
            if (item.verdict.counterexample) {
                ++failures;
                if (first.empty()) first = " first=config" + std::to_string(t) + ":item" + std::to_string(item.item);
            }
        }
    }
    return {5, "norm-relations", failures == 0,
            "configs=100 items=6 degree<=" + std::to_string(degree) + " samples=" + std::to_string(samples) +
                " undecided=" + std::to_string(undecided) + " counterexamples=" + std::to_string(failures) + first};
}

inline CriterionResult negative_control(const AcceptanceConfig& cfg)
{
    Sampler smp = cfg.sampler;
    smp.workers = cfg.workers;
    GagaConfig g;
    g.f = Polynomial::T();
    g.g = Polynomial(1);
    g.negate = 6;
    const auto items = gaga_axiom_suite(g, smp);
    const auto& v = items.back().verdict;
    return {6, "negative-control", v.counterexample, "item6 " + v.str()};
}

inline CriterionResult seminorm_axioms(const AcceptanceConfig& cfg)
{
    const int degree = std::min(8, cfg.cap);
    std::size_t violations = 0;
    for (std::size_t t = 0; t < 1000; ++t) {
        Rng rng(cfg.seed ^ 0x5e41, t);
        const Polynomial a = random_polynomial(rng, degree, 4), b = random_polynomial(rng, degree, 4);
        const GaussianRational z(rng.rational(8, 5), rng.rational(8, 5));
        const std::vector<Polynomial> sample{Polynomial(), Polynomial(1), a, b, a * b, a + b};
        std::vector<ExactNorm> values;
        for (const auto& p : sample) values.push_back(evaluation_seminorm(p, z));
        const auto rep = seminorm_axiom_check(sample, values);
        if (!rep.pass() || rep.checked_products < 1 || rep.checked_sums < 1) ++violations;
    }
    std::size_t root_failures = 0;
    double worst = 0;
    for (std::size_t t = 0; t < 50; ++t) {
        Rng rng(cfg.seed ^ 0x6e1f, t);
        Polynomial p = random_polynomial(rng, std::max(1, degree - 2), 5);
        // repeated factor so that multiplicities collapse
        const Polynomial l = Polynomial::linear(GaussianRational(rng.rational(3, 2), rng.rational(3, 2)));
        if (p.degree() + 2 <= degree) p = p * l * l;
        if (p.is_constant()) p = p * l;
        const auto s = gelfand_points({{p}});
        const Polynomial m = p.monic();
        bool ok = static_cast<int>(s.points.size()) == squarefree_part(p).degree();
        for (const auto& pt : s.points) {
            const double res = std::abs(m(pt.z()));
            worst = std::max(worst, res);
            ok = ok && pt.certified && res < 1e-8;
        }
        if (!ok) ++root_failures;
    }
    return {7, "seminorm-axioms", violations == 0 && root_failures == 0,
            "pairs=1000 degree<=" + std::to_string(degree) + " violations=" + std::to_string(violations) +
                " spectra=50 root_failures=" + std::to_string(root_failures) +
                " max_residual_below_1e-8=" + (worst < 1e-8 ? "true" : "false")};
}

inline RegionExpr random_region(Rng& rng, const std::vector<std::shared_ptr<const PolyData>>& pool)
{
    static const Rational bounds[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
    static const Rel rels[] = {Rel::le, Rel::lt, Rel::ge, Rel::gt};
    RegionExpr out = RegionExpr::empty();
    const int clauses = static_cast<int>(rng.uniform(1, 2));
    for (int c = 0; c < clauses; ++c) {
        RegionExpr cl = RegionExpr::full();
        const int atoms = static_cast<int>(rng.uniform(1, 2));
        for (int a = 0; a < atoms; ++a) {
            const auto& p = pool[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1))];
            cl = meet(cl, RegionExpr::atom(p, rels[rng.uniform(0, 3)], bounds[rng.uniform(0, 4)]));
        }
        out = join(out, cl);
    }
    return out;
}

inline CriterionResult lattice_laws(const AcceptanceConfig& cfg)
{
    Sampler smp = cfg.sampler;
    smp.workers = cfg.workers;
    const int degree = std::min(3, cfg.cap);
    std::size_t failures = 0, checks = 0;
    std::string first;
    for (std::size_t t = 0; t < 200; ++t) {
        Rng rng(cfg.seed ^ 0x1a77, t);
        std::vector<std::shared_ptr<const PolyData>> pool;
        for (int k = 0; k < 3; ++k) pool.push_back(std::make_shared<const PolyData>(random_polynomial(rng, degree, 2)));
        const RegionExpr a = random_region(rng, pool), b = random_region(rng, pool), c = random_region(rng, pool);
        for (const auto& law : lattice_law_check(a, b, c, smp)) {
            ++checks;
            if (law.verdict.counterexample) {
                ++failures;
                if (first.empty()) first = " first=triple" + std::to_string(t) + ":" + law.law;
            }
        }
    }
    return {8, "lattice-laws", failures == 0,
            "triples=200 laws=" + std::to_string(checks) + " samples_per_law=" + std::to_string(cfg.sampler.size()) +
                " violations=" + std::to_string(failures) + first};
}

inline CriterionResult huber_site(const AcceptanceConfig& cfg)
{
    std::size_t axiom_failures = 0, pairs = 0;
    const int degree = std::min(6, cfg.cap);
    for (std::size_t t = 0; t < 20; ++t) {
        Rng rng(cfg.seed ^ 0x4b3e, t);
        const GaussianRational z = rng.gaussian_integer(3);
        const auto v = Valuation::order_at(z, Rational(rng.uniform(1, 15), 16));
        std::vector<Polynomial> sample;
        for (int k = 0; k < 45; ++k) {
            const int m = static_cast<int>(rng.uniform(0, std::min(3, degree)));
            sample.push_back(Polynomial::linear(z).pow(m) * random_polynomial(rng, degree - m, 3));
        }
        const auto rep = valuation_axiom_check(v, sample);
        pairs += rep.pairs;
        if (!rep.pass()) ++axiom_failures;
    }

    const auto corpus = load_fixture_directory(cfg.fixture_dir);
    std::size_t covers = 0, reflexive_failures = 0, transitive_failures = 0, triples = 0;
    std::size_t compositions = 0, composition_failures = 0;
    for (const auto& fx : corpus) {
        const auto& cs = fx.covers;
        covers += cs.size();
        std::vector<std::vector<bool>> rel(cs.size(), std::vector<bool>(cs.size()));
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) rel[i][j] = refines(cs[i], cs[j]).refines;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (!rel[i][i]) ++reflexive_failures;
            for (std::size_t j = 0; j < cs.size(); ++j)
                for (std::size_t k = 0; k < cs.size(); ++k) {
                    if (rel[i][j] && rel[j][k]) {
                        ++triples;
                        if (!rel[i][k]) ++transitive_failures;
                    }
                }
        }
        auto check = [&](const LocalizationSpec& a, const LocalizationSpec& b) {
            ++compositions;
            const HuberPair step = rational_localize(rational_localize(fx.pair, a.numerators, a.denominator),
                                                     b.numerators, b.denominator);
            const auto [num, den] = compose_localizations(a.numerators, a.denominator, b.numerators, b.denominator);
            if (!equivalent(step, rational_localize(fx.pair, num, den))) ++composition_failures;
        };
        const LocalizationSpec identity{{Polynomial(1)}, Polynomial(1)};
        for (const auto& l : fx.localizations) {
            check(l, identity);
            check(identity, l);
        }
        for (const auto& [a, b] : fx.compositions) check(a, b);
    }
    const bool pass = axiom_failures == 0 && covers >= 10 && reflexive_failures == 0 && transitive_failures == 0 &&
                      composition_failures == 0;
    return {9, "huber-site", pass,
            "valuations=20 pairs=" + std::to_string(pairs) + " axiom_failures=" + std::to_string(axiom_failures) +
                " fixtures=" + std::to_string(corpus.size()) + " covers=" + std::to_string(covers) +
                " reflexive_failures=" + std::to_string(reflexive_failures) + " chains=" + std::to_string(triples) +
                " transitive_failures=" + std::to_string(transitive_failures) + " compositions=" +
                std::to_string(compositions) + " composition_failures=" + std::to_string(composition_failures)};
}

inline std::vector<CriterionResult> run_criteria(const AcceptanceConfig& cfg)
{
    return {division_bound(cfg),  division_exhaustive(cfg), laurent_split_check(cfg),
            pairing_bound(cfg),   norm_relations(cfg),      negative_control(cfg),
            seminorm_axioms(cfg), lattice_laws(cfg),        huber_site(cfg)};
}

inline std::string render(const std::vector<CriterionResult>& rs)
{
    std::string s;
    for (const auto& r : rs) s += r.str() + "\n";
    return s;
}

} // namespace detail

/// Criteria 1-9, then criterion 10: a second run with a different worker
/// count must render to the same bytes. `progress`, if set, receives each
/// line as soon as it is known.
inline std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg, std::ostream* progress = nullptr)
{
    cfg.sampler.validate();
    if (cfg.cap < 1) throw std::invalid_argument("degree cap must be at least 1");
    load_fixture_directory(cfg.fixture_dir); // fail on I/O before the long criteria
    using Fn = CriterionResult (*)(const AcceptanceConfig&);
    const Fn steps[] = {detail::division_bound,  detail::division_exhaustive, detail::laurent_split_check,
                        detail::pairing_bound,   detail::norm_relations,      detail::negative_control,
                        detail::seminorm_axioms, detail::lattice_laws,        detail::huber_site};
    std::vector<CriterionResult> out;
    for (auto f : steps) {
        out.push_back(f(cfg));
        if (progress) *progress << out.back().str() << '\n' << std::flush;
    }
    if (cfg.determinism) {
        AcceptanceConfig again = cfg;
        again.workers = cfg.workers == 1 ? 2 : 1;
        const bool same = detail::render(detail::run_criteria(again)) == detail::render(out);
        out.push_back({10, "determinism", same,
                       std::string("rerun_workers=") + std::to_string(again.workers) + " identical=" + (same ? "true" : "false")});
        if (progress) *progress << out.back().str() << '\n' << std::flush;
    }
    return out;
}

inline void write_summary(const std::vector<CriterionResult>& rs, std::ostream& os)
{
    std::size_t passed = 0;
    const CriterionResult* first = nullptr;
    for (const auto& r : rs) {
        if (r.pass) {
            ++passed;
        } else if (!first) {
            first = &r;
        }
    }
    os << "summary passed=" << passed << " failed=" << (rs.size() - passed);
    if (first) os << " first_failure=" << first->id << ":" << first->key;
    os << '\n';
}

} // namespace anline
