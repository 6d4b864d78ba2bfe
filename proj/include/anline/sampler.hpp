#pragma once

// Falsification search over a deterministic point set: a grid over a window
// followed by seeded random points. Points are addressed by index so work can
// be split across threads without changing the verdicts.

#include <anline/random.hpp>
#include <anline/region.hpp>

#include <array>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace anline {

struct Sampler {
    double x0 = -4, y0 = -4, x1 = 4, y1 = 4;
    double grid_step = 1.0 / 32; // <= 0 disables the grid
    std::size_t random_points = 10000;
    std::uint64_t seed = 0;
    bool exact_fallback = true;
    unsigned workers = 1;

    void validate() const
    {
        if (!(x0 < x1) || !(y0 < y1)) throw region_error("sampler window must be a nonempty rectangle");
        if (!std::isfinite(grid_step)) throw region_error("grid step must be finite");
    }

    std::size_t grid_columns() const
    {
        return grid_step > 0 ? static_cast<std::size_t>(std::floor((x1 - x0) / grid_step + 1e-9)) + 1 : 0;
    }
    std::size_t grid_rows() const
    {
        return grid_step > 0 ? static_cast<std::size_t>(std::floor((y1 - y0) / grid_step + 1e-9)) + 1 : 0;
    }
    std::size_t grid_points() const { return grid_columns() * grid_rows(); }
    std::size_t size() const { return grid_points() + random_points; }

    /// Point i: grid points row by row from (x0, y0), then random points.
    std::complex<double> point(std::size_t i) const
    {
        const std::size_t g = grid_points();
        if (i < g) {
            const std::size_t cols = grid_columns();
            return {x0 + static_cast<double>(i % cols) * grid_step, y0 + static_cast<double>(i / cols) * grid_step};
        }
        Rng rng(seed, i - g);
        const double u = rng.unit();
        const double v = rng.unit();
        return {x0 + u * (x1 - x0), y0 + v * (y1 - y0)};
    }
};

struct Verdict {
    bool counterexample = false;
    std::size_t samples = 0;   // points examined
    std::size_t undecided = 0; // points excluded as boundary-undecided
    std::size_t index = 0;     // sample index of the counterexample
    std::complex<double> z{};
    std::string details;

    bool vacuous() const { return !counterexample && samples == 0; }

    std::string str() const
    {
        char buf[160];
        if (counterexample) {
            std::snprintf(buf, sizeof buf, "Counterexample index=%zu z=%.17g%+.17gi", index, z.real(), z.imag());
            return std::string(buf) + (details.empty() ? "" : " " + details);
        }
        std::snprintf(buf, sizeof buf, "NoCounterexampleFound samples=%zu undecided=%zu%s", samples, undecided,
                      samples == 0 ? " vacuous" : "");
        return buf;
    }
};

/// Inclusion lhs <= rhs to be falsified.
struct InclusionCheck {
    RegionExpr lhs;
    RegionExpr rhs;
};

namespace detail {

struct ChunkResult {
    std::vector<std::size_t> undecided;             // per check, up to its counterexample
    std::vector<std::optional<std::size_t>> first;  // per check
};

inline ChunkResult scan_chunk(const std::vector<InclusionCheck>& checks, const Sampler& s, std::size_t begin,
                              std::size_t end)
{
    ChunkResult out{std::vector<std::size_t>(checks.size(), 0), std::vector<std::optional<std::size_t>>(checks.size())};
    std::size_t open = checks.size();
    for (std::size_t i = begin; i < end && open > 0; ++i) {
        PointEvaluator ev(s.point(i), s.exact_fallback);
        for (std::size_t k = 0; k < checks.size(); ++k) {
            if (out.first[k]) continue;
            const Membership a = ev.member(checks[k].lhs);
            if (a == Membership::out) continue;
            const Membership b = ev.member(checks[k].rhs);
            if (a == Membership::in && b == Membership::out) {
                out.first[k] = i;
                --open;
            } else if (b != Membership::in) {
                ++out.undecided[k];
            }
        }
    }
    return out;
}

} // namespace detail

/// One pass over the sampler for several inclusions. A counterexample is the
/// lowest-index point in lhs \ rhs, re-verified exactly before it is reported.
inline std::vector<Verdict> check_inclusions(const std::vector<InclusionCheck>& checks, const Sampler& s)
{
    s.validate();
    const std::size_t n = s.size();
    const unsigned w = std::max(1u, std::min<unsigned>(s.workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::vector<detail::ChunkResult> parts(w);
    auto bounds = [&](unsigned k) { return std::pair{n * k / w, n * (k + 1) / w}; };
    if (w == 1) {
        parts[0] = detail::scan_chunk(checks, s, 0, n);
    } else {
        std::vector<std::thread> threads;
        for (unsigned k = 0; k < w; ++k) {
            threads.emplace_back([&, k] {
                auto [b, e] = bounds(k);
                parts[k] = detail::scan_chunk(checks, s, b, e);
            });
        }
        for (auto& t : threads) t.join();
    }
    std::vector<Verdict> out(checks.size());
    for (std::size_t c = 0; c < checks.size(); ++c) {
        Verdict& v = out[c];
        for (unsigned k = 0; k < w; ++k) {
            v.undecided += parts[k].undecided[c];
            if (parts[k].first[c]) {
                const std::size_t i = *parts[k].first[c];
                const auto z = s.point(i);
                const GaussianRational zq{Rational(z.real()), Rational(z.imag())};
                if (member_exact(checks[c].lhs, zq) && !member_exact(checks[c].rhs, zq)) {
                    v.counterexample = true;
                    v.index = i;
                    v.z = z;
                    v.samples = i + 1;
                    v.details = "in " + checks[c].lhs.str() + " but not in " + checks[c].rhs.str();
                }
                break;
            }
        }
        if (!v.counterexample) v.samples = n;
    }
    return out;
}

inline Verdict includes(const RegionExpr& a, const RegionExpr& b, const Sampler& s)
{
    return check_inclusions({{a, b}}, s).front();
}

/// Earlier of two verdicts; counterexamples win.
inline Verdict merge_verdicts(const Verdict& a, const Verdict& b)
{
    if (a.counterexample && b.counterexample) return a.index <= b.index ? a : b;
    if (a.counterexample) return a;
    if (b.counterexample) return b;
    Verdict v = a;
    v.samples = std::max(a.samples, b.samples);
    v.undecided = a.undecided + b.undecided;
    return v;
}

/// Pointwise equality as two inclusions checked in one pass.
inline Verdict equals(const RegionExpr& a, const RegionExpr& b, const Sampler& s)
{
    auto v = check_inclusions({{a, b}, {b, a}}, s);
    return merge_verdicts(v[0], v[1]);
}

inline Verdict distributivity_check(const RegionExpr& a, const RegionExpr& b, const RegionExpr& c, const Sampler& s)
{
    return equals(meet(a, join(b, c)), join(meet(a, b), meet(a, c)), s);
}

struct LawResult {
    std::string law;
    Verdict verdict;
};

/// Commutativity, associativity, idempotence, absorption and both
/// distributive laws on a triple, as pointwise equalities in one pass.
inline std::vector<LawResult> lattice_law_check(const RegionExpr& a, const RegionExpr& b, const RegionExpr& c,
                                                const Sampler& s)
{
    const std::vector<std::pair<std::string, std::pair<RegionExpr, RegionExpr>>> laws = {
        {"meet-commutative", {meet(a, b), meet(b, a)}},
        {"join-commutative", {join(a, b), join(b, a)}},
        {"meet-associative", {meet(a, meet(b, c)), meet(meet(a, b), c)}},
        {"join-associative", {join(a, join(b, c)), join(join(a, b), c)}},
        {"meet-idempotent", {meet(a, a), a}},
        {"join-idempotent", {join(a, a), a}},
        {"absorption-meet", {meet(a, join(a, b)), a}},
        {"absorption-join", {join(a, meet(a, b)), a}},
        {"distributive-meet", {meet(a, join(b, c)), join(meet(a, b), meet(a, c))}},
        {"distributive-join", {join(a, meet(b, c)), meet(join(a, b), join(a, c))}},
    };
    std::vector<InclusionCheck> checks;
    for (const auto& [name, eq] : laws) {
        checks.push_back({eq.first, eq.second});
        checks.push_back({eq.second, eq.first});
    }
    auto v = check_inclusions(checks, s);
    std::vector<LawResult> out;
    for (std::size_t i = 0; i < laws.size(); ++i) out.push_back({laws[i].first, merge_verdicts(v[2 * i], v[2 * i + 1])});
    return out;
}

struct GagaConfig {
    Polynomial f = Polynomial::T();
    Polynomial g = Polynomial::T() + Polynomial(1);
    GaussianRational alpha = GaussianRational(Rational(1, 2));
    Rational r = 1;
    Rational s = 1;
    Rational r3 = Rational(1, 2); // radius for the disjointness item, must be < 1
    int negate = 0;               // 6 replaces r + s by (r + s)/2 in the last item
};

struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GagaItem {
    int item = 0;
    std::string relation;
    Verdict verdict;
};

inline const std::vector<Rational>& upper_radius_schedule()
{
    static const std::vector<Rational> s{Rational(2), Rational(3, 2), Rational(5, 4), Rational(9, 8), Rational(17, 16)};
    return s;
}

inline const std::vector<Rational>& lower_radius_schedule()
{
    static const std::vector<Rational> s{Rational(1, 2), Rational(2, 3), Rational(4, 5), Rational(8, 9),
                                         Rational(16, 17)};
    return s;
}

/// The six norm relations, each tested as inclusions over the sampler.
inline std::vector<GagaItem> gaga_axiom_suite(const GagaConfig& cfg, const Sampler& smp)
{
    if (cfg.f.is_zero() || cfg.g.is_zero()) throw config_error("f and g must be nonzero");
    if (cfg.alpha.is_zero()) throw config_error("alpha must be nonzero");
    if (sgn(cfg.r) <= 0 || sgn(cfg.s) <= 0) throw config_error("r and s must be positive");
    if (sgn(cfg.r3) <= 0 || cfg.r3 >= 1) throw config_error("the disjointness radius must lie in (0, 1)");
    if (cfg.negate != 0 && cfg.negate != 6) throw config_error("only item 6 can be negated");

    auto F = std::make_shared<const PolyData>(cfg.f);
    auto G = std::make_shared<const PolyData>(cfg.g);
    auto FG = std::make_shared<const PolyData>(cfg.f * cfg.g);
    auto A = std::make_shared<const PolyData>(Polynomial(cfg.alpha));
    const Polynomial sum = cfg.f + cfg.g;
    const Rational one(1);
    auto at = [](const std::shared_ptr<const PolyData>& p, Rel rel, const Rational& c) { return RegionExpr::atom(p, rel, c); };

    std::vector<std::pair<int, std::vector<InclusionCheck>>> items;
    std::vector<std::string> names;

    RegionExpr upper = RegionExpr::full();
    for (const auto& rk : upper_radius_schedule()) upper = meet(upper, at(F, Rel::le, rk));
    RegionExpr lower = RegionExpr::full();
    for (const auto& rk : lower_radius_schedule()) lower = meet(lower, at(F, Rel::ge, rk));
    items.push_back({1, {{at(F, Rel::le, one), upper}, {at(F, Rel::ge, one), lower}}});
    names.push_back("|f|<=1 within every |f|<=r (r>1); |f|>=1 within every |f|>=r (r<1)");

    items.push_back({2, {{RegionExpr::full(), join(at(F, Rel::le, one), at(F, Rel::ge, one))}}});
    names.push_back("|f|<=1 or |f|>=1 covers everything");

    items.push_back({3, {{meet(at(F, Rel::le, cfg.r3), at(F, Rel::ge, one)), RegionExpr::empty()}}});
    names.push_back("|f|<=" + cfg.r3.get_str() + " and |f|>=1 is empty");

    items.push_back({4,
                     {{meet(at(F, Rel::le, one), at(G, Rel::le, one)), at(FG, Rel::le, one)},
                      {meet(at(F, Rel::ge, one), at(G, Rel::ge, one)), at(FG, Rel::ge, one)}}});
    names.push_back("|f|<=1,|g|<=1 => |fg|<=1; |f|>=1,|g|>=1 => |fg|>=1");

    std::vector<InclusionCheck> five;
    const Rational a2 = cfg.alpha.norm2();
    if (a2 <= 1) five.push_back({RegionExpr::full(), at(A, Rel::le, one)});
    if (a2 >= 1) five.push_back({RegionExpr::full(), at(A, Rel::ge, one)});
    items.push_back({5, five});
    names.push_back(a2 < 1 ? "|alpha|<=1 everywhere" : a2 > 1 ? "|alpha|>=1 everywhere" : "|alpha|<=1 and >=1 everywhere");

    const Rational bound = cfg.negate == 6 ? Rational((cfg.r + cfg.s) / 2) : Rational(cfg.r + cfg.s);
    RegionExpr rhs6 = sum.is_zero() ? RegionExpr::full() : RegionExpr::atom(sum, Rel::le, bound);
    items.push_back({6, {{meet(at(F, Rel::le, cfg.r), at(G, Rel::le, cfg.s)), rhs6}}});
    names.push_back("|f|<=r,|g|<=s => |f+g|<=" + std::string(cfg.negate == 6 ? "(r+s)/2" : "r+s"));

    std::vector<InclusionCheck> all;
    for (const auto& [n, cs] : items) all.insert(all.end(), cs.begin(), cs.end());
    auto verdicts = check_inclusions(all, smp);
    std::vector<GagaItem> out;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < items.size(); ++k) {
        Verdict v;
        v.samples = smp.size();
        bool first = true;
        for (std::size_t j = 0; j < items[k].second.size(); ++j, ++pos) {
            v = first ? verdicts[pos] : merge_verdicts(v, verdicts[pos]);
            first = false;
        }
        out.push_back({items[k].first, names[k], v});
    }
    return out;
}

} // namespace anline
