#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coords.hpp"
#include "persistence.hpp"
#include "point_cloud.hpp"
#include "rips.hpp"
#include "svg.hpp"

namespace circ {

enum class PlotKind { colored_scatter, correlation, coordinate_plot, barcode, density };

struct PlotSpec {
    PlotKind kind = PlotKind::colored_scatter;
    double width = 640.0;
    double height = 480.0;
    double margin = 40.0;
    double point_radius = 3.0;

    void validate() const {
        if (!(width > 0.0) || !(height > 0.0) || !(margin >= 0.0) || !(point_radius > 0.0))
            throw std::invalid_argument("plot dimensions must be positive");
    }
};

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

struct AxisMap {
    double lo, hi, pix_lo, pix_hi;
    double operator()(double v) const {
        const double span = hi - lo;
        const double t = span > 0.0 ? (v - lo) / span : 0.5;
        return pix_lo + t * (pix_hi - pix_lo);
    }
};

inline std::pair<double, double> range_of(const std::vector<double>& xs) {
    double lo = xs.empty() ? 0.0 : xs.front(), hi = lo;
    for (double x : xs) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (hi == lo) hi = lo + 1.0;
    return {lo, hi};
}

} // namespace detail

// Scatter of the first two coordinates colored by hue_degrees = 360*theta;
// constant edges rendered as gray strokes. The CSV twin carries one row per
// point: x, y, theta, hue_degrees.
inline void emit_colored_scatter(const PointCloud& cloud, const std::vector<double>& theta,
                                 const std::vector<Edge>& edges,
                                 const std::vector<char>& constant_flag,
                                 const std::string& svg_path, const std::string& csv_path,
                                 const PlotSpec& spec = {}) {
    spec.validate();
    if (cloud.n != theta.size()) throw std::invalid_argument("theta length must match point count");
    if (edges.size() != constant_flag.size())
        throw std::invalid_argument("edge flags must match edge count");
    if (cloud.d < 2) throw std::invalid_argument("scatter needs at least 2 coordinates");

    std::vector<double> xs(cloud.n), ys(cloud.n);
    for (std::size_t i = 0; i < cloud.n; ++i) {
        xs[i] = cloud.at(i, 0);
        ys[i] = cloud.at(i, 1);
    }
    auto [xlo, xhi] = detail::range_of(xs);
    auto [ylo, yhi] = detail::range_of(ys);
    detail::AxisMap mx{xlo, xhi, spec.margin, spec.width - spec.margin};
    detail::AxisMap my{ylo, yhi, spec.height - spec.margin, spec.margin};

    SvgDocument svg(spec.width, spec.height);
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (constant_flag[e])
            svg.line(mx(xs[edges[e].u]), my(ys[edges[e].u]), mx(xs[edges[e].v]),
                     my(ys[edges[e].v]), "#888888", 0.8);
    std::ostringstream csv;
    csv << "x,y,theta,hue_degrees\n";
    for (std::size_t i = 0; i < cloud.n; ++i) {
        const double hue = 360.0 * theta[i];
        svg.circle(mx(xs[i]), my(ys[i]), spec.point_radius, hsv_to_hex(hue));
        csv << format_double(xs[i]) << "," << format_double(ys[i]) << ","
            << format_double(theta[i]) << "," << format_double(hue) << "\n";
    }
    detail::write_file(svg_path, svg.str());
    detail::write_file(csv_path, csv.str());
}

// Coordinate value against the data-space angle. CSV twin: angle, theta.
inline void emit_correlation(const std::vector<double>& angles, const std::vector<double>& theta,
                             const std::string& svg_path, const std::string& csv_path,
                             const PlotSpec& spec = {}) {
    spec.validate();
    if (angles.size() != theta.size()) throw std::invalid_argument("angle/theta length mismatch");
    const double two_pi = 6.283185307179586476925286766559;
    detail::AxisMap mx{0.0, two_pi, spec.margin, spec.width - spec.margin};
    detail::AxisMap my{0.0, 1.0, spec.height - spec.margin, spec.margin};

    SvgDocument svg(spec.width, spec.height);
    svg.rect(spec.margin, spec.margin, spec.width - 2 * spec.margin,
             spec.height - 2 * spec.margin, "#000000", "none");
    std::ostringstream csv;
    csv << "angle,theta\n";
    for (std::size_t i = 0; i < angles.size(); ++i) {
        svg.circle(mx(angles[i]), my(theta[i]), spec.point_radius, "#1f5fa6");
        csv << format_double(angles[i]) << "," << format_double(theta[i]) << "\n";
    }
    detail::write_file(svg_path, svg.str());
    detail::write_file(csv_path, csv.str());
}

// Two circular coordinates on the unit box with the sides identified; points
// near a wrap edge are re-drawn on the opposite side so bands stay unbroken.
inline void emit_coordinate_plot(const std::vector<double>& theta1,
                                 const std::vector<double>& theta2, const std::string& svg_path,
                                 const std::string& csv_path, const PlotSpec& spec = {}) {
    spec.validate();
    if (theta1.size() != theta2.size()) throw std::invalid_argument("coordinate length mismatch");
    detail::AxisMap mx{0.0, 1.0, spec.margin, spec.width - spec.margin};
    detail::AxisMap my{0.0, 1.0, spec.height - spec.margin, spec.margin};

    SvgDocument svg(spec.width, spec.height);
    svg.rect(spec.margin, spec.margin, spec.width - 2 * spec.margin,
             spec.height - 2 * spec.margin, "#000000", "none");
    std::ostringstream csv;
    csv << "theta1,theta2\n";
    const double wrap_band = 0.02;
    for (std::size_t i = 0; i < theta1.size(); ++i) {
        svg.circle(mx(theta1[i]), my(theta2[i]), spec.point_radius, "#1f5fa6");
        // ghost copies across the identified sides
        if (theta1[i] < wrap_band)
            svg.circle(mx(theta1[i] + 1.0), my(theta2[i]), spec.point_radius, "#9bbbd9");
        if (theta2[i] < wrap_band)
            svg.circle(mx(theta1[i]), my(theta2[i] + 1.0), spec.point_radius, "#9bbbd9");
        csv << format_double(theta1[i]) << "," << format_double(theta2[i]) << "\n";
    }
    detail::write_file(svg_path, svg.str());
    detail::write_file(csv_path, csv.str());
}

// Barcode: one horizontal bar per pair, dim-1 bars highlighted, infinite
// bars drawn to the frame edge with an arrowhead. CSV twin: dim,birth,death.
inline void emit_barcode(const std::vector<PersistencePair>& pairs, double max_scale,
                         const std::string& svg_path, const std::string& csv_path,
                         const PlotSpec& spec = {}) {
    spec.validate();
    double hi = max_scale;
    for (const auto& pr : pairs) {
        hi = std::max(hi, pr.birth);
        if (pr.death != kInf) hi = std::max(hi, pr.death);
    }
    if (hi <= 0.0) hi = 1.0;
    detail::AxisMap mx{0.0, hi, spec.margin, spec.width - spec.margin};

    SvgDocument svg(spec.width, spec.height);
    svg.rect(spec.margin, spec.margin, spec.width - 2 * spec.margin,
             spec.height - 2 * spec.margin, "#000000", "none");
    std::ostringstream csv;
    csv << "dim,birth,death\n";
    const double rows = std::max<std::size_t>(pairs.size(), 1);
    const double step = (spec.height - 2 * spec.margin) / (rows + 1);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& pr = pairs[i];
        const double y = spec.margin + step * (i + 1);
        const std::string color = pr.dim == 1 ? "#c22d2d" : "#555555";
        const double wd = pr.dim == 1 ? 3.0 : 1.5;
        const double x0 = mx(pr.birth);
        const double x1 = pr.death == kInf ? spec.width - spec.margin : mx(pr.death);
        svg.line(x0, y, x1, y, color, wd);
        if (pr.death == kInf) {
            std::ostringstream pts;
            pts << SvgDocument::num(x1) << "," << SvgDocument::num(y) << " "
                << SvgDocument::num(x1 - 6) << "," << SvgDocument::num(y - 3) << " "
                << SvgDocument::num(x1 - 6) << "," << SvgDocument::num(y + 3);
            svg.polygon(pts.str(), color);
        }
        csv << pr.dim << "," << format_double(pr.birth) << ","
            << (pr.death == kInf ? std::string("inf") : format_double(pr.death)) << "\n";
    }
    detail::write_file(svg_path, svg.str());
    detail::write_file(csv_path, csv.str());
}

namespace detail {

// Wrapped Gaussian kernel density on [0,1), bandwidth by Silverman's rule.
inline std::vector<double> wrapped_kde(const std::vector<double>& sample, std::size_t grid) {
    const std::size_t n = sample.size();
    if (n == 0) return std::vector<double>(grid, 0.0);
    double mean = 0.0;
    for (double x : sample) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : sample) var += (x - mean) * (x - mean);
    var /= std::max<std::size_t>(n - 1, 1);
    std::vector<double> sorted = sample;
    std::sort(sorted.begin(), sorted.end());
    const double iqr = sorted[(3 * n) / 4] - sorted[n / 4];
    double spread = std::sqrt(var);
    if (iqr > 0.0) spread = std::min(spread, iqr / 1.34);
    double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
    if (!(h > 1e-6)) h = 1e-6;

    std::vector<double> density(grid, 0.0);
    const double norm = 1.0 / (n * h * std::sqrt(6.283185307179586));
    for (std::size_t g = 0; g < grid; ++g) {
        const double x = static_cast<double>(g) / grid;
        double acc = 0.0;
        for (double xi : sample)
            for (int k = -3; k <= 3; ++k) {
                const double d = x - xi + k;
                acc += std::exp(-0.5 * d * d / (h * h));
            }
        density[g] = norm * acc;
    }
    return density;
}

} // namespace detail

// Frequency curves for each coordinate column plus the combined column.
// CSV twin: grid value, then one density column per curve.
inline void emit_density(const std::vector<std::vector<double>>& columns,
                         const std::vector<double>& combined, const std::string& svg_path,
                         const std::string& csv_path, const PlotSpec& spec = {}) {
    spec.validate();
    if (columns.empty()) throw std::invalid_argument("density plot requires k >= 1");
    const std::size_t grid = 256;

    std::vector<std::vector<double>> curves;
    for (const auto& col : columns) curves.push_back(detail::wrapped_kde(col, grid));
    curves.push_back(detail::wrapped_kde(combined, grid));

    double dmax = 1e-12;
    for (const auto& c : curves)
        for (double v : c) dmax = std::max(dmax, v);
    detail::AxisMap mx{0.0, 1.0, spec.margin, spec.width - spec.margin};
    detail::AxisMap my{0.0, dmax, spec.height - spec.margin, spec.margin};

    static const char* palette[] = {"#1f5fa6", "#c22d2d", "#2d8a3e", "#8a5cc2", "#b8860b"};
    SvgDocument svg(spec.width, spec.height);
    svg.rect(spec.margin, spec.margin, spec.width - 2 * spec.margin,
             spec.height - 2 * spec.margin, "#000000", "none");
    for (std::size_t c = 0; c < curves.size(); ++c) {
        std::ostringstream pts;
        for (std::size_t g = 0; g < grid; ++g) {
            if (g) pts << " ";
            pts << SvgDocument::num(mx(static_cast<double>(g) / grid)) << ","
                << SvgDocument::num(my(curves[c][g]));
        }
        svg.polyline(pts.str(), palette[c % 5], c + 1 == curves.size() ? 2.5 : 1.5);
    }

    std::ostringstream csv;
    csv << "theta";
    for (std::size_t c = 0; c + 1 < curves.size(); ++c) csv << ",density_" << (c + 1);
    csv << ",density_combined\n";
    for (std::size_t g = 0; g < grid; ++g) {
        csv << format_double(static_cast<double>(g) / grid);
        for (const auto& c : curves) csv << "," << format_double(c[g]);
        csv << "\n";
    }
    detail::write_file(svg_path, svg.str());
    detail::write_file(csv_path, csv.str());
}

} // namespace circ
