#pragma once

// Raster and vector images of a region. Each grid cell is classified as a
// whole: member when the region holds on the entire cell, nonmember when it
// fails on the entire cell, boundary otherwise.

#include <anline/region.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace anline {

enum class CellClass : std::uint8_t { nonmember, member, boundary };

struct PlotWindow {
    double x0 = -2, y0 = -2, x1 = 2, y1 = 2;
    double step = 1.0 / 64;
    unsigned workers = 1;

    std::size_t columns() const { return cells(x1 - x0); }
    std::size_t rows() const { return cells(y1 - y0); }

    /// Cell (i, j), row 0 at the top.
    std::complex<double> center(std::size_t i, std::size_t j) const
    {
        return {x0 + (static_cast<double>(i) + 0.5) * step, y1 - (static_cast<double>(j) + 0.5) * step};
    }

    void validate() const
    {
        if (!(x0 < x1) || !(y0 < y1)) throw region_error("plot window must be a nonempty rectangle");
        if (!(step > 0) || !std::isfinite(step)) throw region_error("plot grid step must be positive");
        if (static_cast<double>(columns()) * static_cast<double>(rows()) > 64e6) throw region_error("plot has too many cells");
    }

private:
    std::size_t cells(double extent) const { return static_cast<std::size_t>(std::ceil(extent / step - 1e-9)); }
};

namespace detail {

// |f| over the disc |z - c| <= rho: [lo, hi] from the majorant sum |a_n| (|c| + rho)^n.
inline std::pair<double, double> modulus_range(const PolyData& f, std::complex<double> c, double rho)
{
    constexpr double u = std::numeric_limits<double>::epsilon() / 2;
    std::complex<double> acc{};
    double mag = 0, big = 0;
    const double ac = std::abs(c), ar = ac + rho;
    for (std::size_t k = f.coeffs.size(); k-- > 0;) {
        acc = acc * c + f.coeffs[k];
        mag = mag * ac + f.abs_coeffs[k];
        big = big * ar + f.abs_coeffs[k];
    }
    const double n = static_cast<double>(f.coeffs.size());
    const double err = 16.0 * (n + 2.0) * u * big * (1.0 + 1e-12) + 4.0 * u * std::abs(acc);
    const double spread = (big - mag) * (1.0 + 4.0 * (n + 2.0) * u) + err;
    const double m = std::abs(acc);
    return {std::max(0.0, m - spread), m + spread};
}

inline CellClass classify(const Constraint& c, std::pair<double, double> range)
{
    const double b = c.c_double() * (1 + 4 * std::numeric_limits<double>::epsilon());
    const double a = c.c_double() * (1 - 4 * std::numeric_limits<double>::epsilon());
    const bool below = range.second < a, above = range.first > b;
    if (!below && !above) return CellClass::boundary;
    const bool le = c.rel() == Rel::le || c.rel() == Rel::lt;
    return (below == le) ? CellClass::member : CellClass::nonmember;
}

} // namespace detail

/// Row-major classification, row 0 at the top of the window.
inline std::vector<CellClass> rasterize(const RegionExpr& R, const PlotWindow& w)
{
    w.validate();
    const std::size_t cols = w.columns(), rows = w.rows();
    std::vector<CellClass> out(cols * rows, CellClass::nonmember);
    const auto polys = R.polynomials();
    const double rho = w.step * std::sqrt(0.5) * (1 + 1e-12);
    auto run = [&](std::size_t j0, std::size_t j1) {
        std::vector<std::pair<double, double>> ranges(polys.size());
        for (std::size_t j = j0; j < j1; ++j) {
            for (std::size_t i = 0; i < cols; ++i) {
                const auto z = w.center(i, j);
                for (std::size_t p = 0; p < polys.size(); ++p) ranges[p] = detail::modulus_range(*polys[p], z, rho);
                CellClass region = CellClass::nonmember;
                for (const auto& cl : R.clauses()) {
                    CellClass clause = CellClass::member;
                    for (const auto& c : cl) {
                        const std::size_t p = static_cast<std::size_t>(
                            std::find(polys.begin(), polys.end(), c.data()) - polys.begin());
                        const CellClass x = detail::classify(c, ranges[p]);
                        if (x == CellClass::nonmember) {
                            clause = x;
                            break;
                        }
                        if (x == CellClass::boundary) clause = x;
                    }
                    if (clause == CellClass::member) {
                        region = clause;
                        break;
                    }
                    if (clause == CellClass::boundary) region = clause;
                }
                out[j * cols + i] = region;
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(w.workers, static_cast<unsigned>(rows)));
    if (workers == 1) {
        run(0, rows);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (rows + workers - 1) / workers;
        for (unsigned t = 0; t < workers; ++t) {
            const std::size_t a = std::min(rows, t * chunk), b = std::min(rows, a + chunk);
            pool.emplace_back(run, a, b);
        }
        for (auto& t : pool) t.join();
    }
    return out;
}

using Rgb = std::array<std::uint8_t, 3>;

struct PlotStyle {
    Rgb member{40, 96, 176};
    Rgb nonmember{255, 255, 255};
    Rgb boundary{224, 112, 32};

    const Rgb& color(CellClass c) const
    {
        switch (c) {
        case CellClass::member: return member;
        case CellClass::boundary: return boundary;
        default: return nonmember;
        }
    }
};

/// Binary portable pixmap, one pixel per cell.
inline void write_ppm(std::ostream& os, const std::vector<CellClass>& cells, std::size_t cols, std::size_t rows,
                      const PlotStyle& style = {})
{
    os << "P6\n" << cols << ' ' << rows << "\n255\n";
    std::vector<char> row(cols * 3);
    for (std::size_t j = 0; j < rows; ++j) {
        for (std::size_t i = 0; i < cols; ++i) {
            const Rgb& c = style.color(cells[j * cols + i]);
            for (int k = 0; k < 3; ++k) row[i * 3 + static_cast<std::size_t>(k)] = static_cast<char>(c[static_cast<std::size_t>(k)]);
        }
        os.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

/// Vector image in cell units; runs of equal non-background cells in a row
/// become one rectangle.
inline void write_svg(std::ostream& os, const std::vector<CellClass>& cells, std::size_t cols, std::size_t rows,
                      const PlotStyle& style = {})
{
    auto hex = [](const Rgb& c) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
        return std::string(buf);
    };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols << "\" height=\"" << rows << "\" viewBox=\"0 0 "
       << cols << ' ' << rows << "\" shape-rendering=\"crispEdges\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << cols << "\" height=\"" << rows << "\" fill=\"" << hex(style.nonmember) << "\"/>\n";
    for (std::size_t j = 0; j < rows; ++j) {
        std::size_t i = 0;
        while (i < cols) {
            const CellClass c = cells[j * cols + i];
            std::size_t k = i + 1;
            while (k < cols && cells[j * cols + k] == c) ++k;
            if (c != CellClass::nonmember) {
                os << "<rect x=\"" << i << "\" y=\"" << j << "\" width=\"" << (k - i) << "\" height=\"1\" fill=\""
                   << hex(style.color(c)) << "\"/>\n";
            }
            i = k;
        }
    }
    os << "</svg>\n";
}

} // namespace anline
