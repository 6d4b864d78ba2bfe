#pragma once

// Site fixtures: plain `key = value` files describing a Huber pair over C[T]
// together with covers, localizations, valuations and rational subsets.
//
//   pair      = ring=C[T] inverted=T, T-1 aplus=T
//   cover     = twopiece T-1
//   cover     = twopiece T +aplus T+1
//   cover     = zariski T, T-1
//   localize  = T, 1 ; T-1
//   compose   = T ; 1 | T+1 ; 1
//   valuation = order 0 1/2
//   valuation = trivial 1+i
//   valuation = trivial generic
//   rational  = T ; 1

#include <anline/huber.hpp>
#include <anline/literal.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace anline {

struct fixture_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LocalizationSpec {
    std::vector<Polynomial> numerators;
    Polynomial denominator;

    std::string str() const
    {
        std::string s;
        for (std::size_t i = 0; i < numerators.size(); ++i) s += (i ? ", " : "") + numerators[i].str();
        return s + " ; " + denominator.str();
    }
};

struct SiteFixture {
    std::string name;
    HuberPair pair;
    std::vector<CoverSpec> covers;
    std::vector<LocalizationSpec> localizations;
    std::vector<std::pair<LocalizationSpec, LocalizationSpec>> compositions;
    std::vector<Valuation> valuations;
    std::vector<RationalSubsetSpec> rationals;
};

namespace detail {

inline std::string strip(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<Polynomial> parse_poly_list(std::string_view text)
{
    std::vector<Polynomial> out;
    if (strip(text).empty()) return out;
    for (const auto& item : split_top_level(text, ',')) out.push_back(parse_polynomial(item));
    return out;
}

inline std::vector<RationalFunction> parse_rf_list(std::string_view text)
{
    std::vector<RationalFunction> out;
    if (strip(text).empty()) return out;
    for (const auto& item : split_top_level(text, ',')) out.push_back(parse_rational_function(item));
    return out;
}

inline LocalizationSpec parse_localization(std::string_view text)
{
    const auto parts = split_top_level(text, ';');
    if (parts.size() != 2) throw fixture_error("expected '<f_1>, ..., <f_n> ; <g>' in '" + std::string(text) + "'");
    return {parse_poly_list(parts[0]), parse_polynomial(parts[1])};
}

// `ring=C[T] inverted=... aplus=...`; each field runs until the next field name.
inline HuberPair parse_pair(std::string_view text)
{
    const std::string s(text);
    const std::vector<std::string> keys{"ring=", "inverted=", "aplus="};
    std::vector<std::pair<std::size_t, std::size_t>> at; // (position, key index)
    for (std::size_t k = 0; k < keys.size(); ++k) {
        const auto p = s.find(keys[k]);
        if (p != std::string::npos) at.emplace_back(p, k);
    }
    std::sort(at.begin(), at.end());
    std::vector<std::string> value(keys.size());
    for (std::size_t i = 0; i < at.size(); ++i) {
        const std::size_t start = at[i].first + keys[at[i].second].size();
        const std::size_t end = i + 1 < at.size() ? at[i + 1].first : s.size();
        value[at[i].second] = strip(std::string_view(s).substr(start, end - start));
    }
    if (!value[0].empty() && value[0] != "C[T]") throw fixture_error("unsupported ring '" + value[0] + "', only C[T]");
    const auto inverted = parse_poly_list(value[1]);
    HuberPair base(inverted);
    return base.with_aplus(parse_rf_list(value[2]));
}

inline Valuation parse_valuation(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string kind, a, b;
    in >> kind >> a >> b;
    if (kind == "order") {
        if (a.empty() || b.empty()) throw fixture_error("expected 'order <z> <gamma>'");
        return Valuation::order_at(parse_coefficient(a), parse_rational(b));
    }
    if (kind == "trivial") {
        if (a.empty()) throw fixture_error("expected 'trivial <z>' or 'trivial generic'");
        return a == "generic" ? Valuation::trivial_generic() : Valuation::trivial_at(parse_coefficient(a));
    }
    throw fixture_error("unknown valuation kind '" + kind + "'");
}

inline CoverSpec parse_cover(const HuberPair& base, std::string_view text)
{
    std::string s = strip(text);
    const auto sp = s.find(' ');
    const std::string kind = s.substr(0, sp);
    std::string rest = sp == std::string::npos ? std::string() : strip(std::string_view(s).substr(sp));
    if (kind == "twopiece") {
        HuberPair b = base;
        const auto plus = rest.find("+aplus");
        if (plus != std::string::npos) {
            b = b.with_aplus(parse_rf_list(std::string_view(rest).substr(plus + 6)));
            rest = strip(std::string_view(rest).substr(0, plus));
        }
        return two_piece_cover(b, parse_rational_function(rest));
    }
    if (kind == "zariski") return zariski_cover(base, parse_poly_list(rest));
    throw fixture_error("unknown cover kind '" + kind + "'");
}

} // namespace detail

/// Parse fixture text. The `pair` line, if present, must precede the lines
/// that depend on it; the default pair is (C[T], C[T]^+ = <1>).
inline SiteFixture parse_site_fixture(std::istream& in, std::string name = "fixture")
{
    SiteFixture fx;
    fx.name = std::move(name);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string s = detail::strip(line);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw fixture_error(fx.name + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = detail::strip(std::string_view(s).substr(0, eq));
        const std::string value = detail::strip(std::string_view(s).substr(eq + 1));
        try {
            if (key == "pair") {
                fx.pair = detail::parse_pair(value);
            } else if (key == "cover") {
                fx.covers.push_back(detail::parse_cover(fx.pair, value));
            } else if (key == "localize") {
                fx.localizations.push_back(detail::parse_localization(value));
            } else if (key == "compose") {
                const auto parts = split_top_level(value, '|');
                if (parts.size() != 2) throw fixture_error("expected '<fs> ; <g> | <hs> ; <k>'");
                fx.compositions.emplace_back(detail::parse_localization(parts[0]), detail::parse_localization(parts[1]));
            } else if (key == "valuation") {
                fx.valuations.push_back(detail::parse_valuation(value));
            } else if (key == "rational") {
                const auto l = detail::parse_localization(value);
                fx.rationals.emplace_back(l.numerators, l.denominator);
            } else {
                throw fixture_error("unknown key '" + key + "'");
            }
        } catch (const fixture_error& e) {
            throw fixture_error(fx.name + ":" + std::to_string(lineno) + ": " + e.what());
        } catch (const std::exception& e) {
            throw fixture_error(fx.name + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return fx;
}

inline SiteFixture load_site_fixture(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::filesystem::filesystem_error("cannot open fixture", path, std::make_error_code(std::errc::no_such_file_or_directory));
    return parse_site_fixture(in, path.filename().string());
}

/// Every `*.site` file in a directory, sorted by file name.
inline std::vector<SiteFixture> load_fixture_directory(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir)) {
        throw std::filesystem::filesystem_error("fixture directory not found", dir, std::make_error_code(std::errc::not_a_directory));
    }
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".site") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw std::filesystem::filesystem_error("no .site fixtures", dir, std::make_error_code(std::errc::no_such_file_or_directory));
    }
    std::vector<SiteFixture> out;
    for (const auto& f : files) out.push_back(load_site_fixture(f));
    return out;
}

// Reports, one record per line.

inline void write_localizations(const SiteFixture& fx, std::ostream& os)
{
    for (const auto& l : fx.localizations) {
        os << "localize " << l.str() << " -> " << rational_localize(fx.pair, l.numerators, l.denominator).str() << '\n';
    }
    for (const auto& [a, b] : fx.compositions) {
        const HuberPair step = rational_localize(rational_localize(fx.pair, a.numerators, a.denominator), b.numerators, b.denominator);
        const auto [num, den] = compose_localizations(a.numerators, a.denominator, b.numerators, b.denominator);
        const HuberPair once = rational_localize(fx.pair, num, den);
        os << "compose " << a.str() << " | " << b.str() << " -> " << LocalizationSpec{num, den}.str()
           << " equal=" << (equivalent(step, once) ? "true" : "false") << '\n';
    }
}

inline void write_covers(const SiteFixture& fx, std::ostream& os)
{
    for (const auto& c : fx.covers) c.write(os);
}

inline void write_refinements(const SiteFixture& fx, std::ostream& os)
{
    for (std::size_t i = 0; i < fx.covers.size(); ++i) {
        for (std::size_t j = 0; j < fx.covers.size(); ++j) {
            os << "refine " << i << " " << j << " " << refines(fx.covers[i], fx.covers[j]).str() << '\n';
        }
    }
}

inline void write_spa(const SiteFixture& fx, std::ostream& os)
{
    for (const auto& v : fx.valuations) {
        for (const auto& r : fx.rationals) {
            os << "spa " << v.str() << " in " << r.str() << " -> " << to_string(spa_membership(v, fx.pair, r)) << '\n';
        }
    }
}

} // namespace anline
