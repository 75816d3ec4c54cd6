#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "persistence.hpp"
#include "point_cloud.hpp"

namespace circ {

inline double mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r = 0.0; // guard against rounding at the wrap
    return r;
}

// Per-point circle coordinates, one column per selected cocycle.
struct CircularCoordinates {
    std::vector<std::vector<double>> columns; // each length n, entries in [0, 1)
    std::vector<int> cocycle_ids;

    std::size_t n() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t k() const { return columns.size(); }
};

// theta_i = f_i mod 1.
inline std::vector<double> extract_coords(const std::vector<double>& f) {
    std::vector<double> theta(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f[i])) throw std::invalid_argument("vertex function must be finite");
        theta[i] = mod1(f[i]);
    }
    return theta;
}

struct EdgeClassification {
    std::vector<double> alpha_bar;
    std::vector<char> constant_flag; // |alpha_bar_e| < eps
    double eps = 1e-4;
    std::size_t constant_count = 0;
    std::vector<std::size_t> per_component; // constant-edge count per component root
};

// Constant edges are those where the smoothed cocycle magnitude is below the
// threshold: the coordinate does not change along them.
inline EdgeClassification classify_edges(const std::vector<double>& alpha_bar, double eps = 1e-4) {
    if (!(eps > 0.0)) throw std::invalid_argument("threshold must be positive");
    EdgeClassification out;
    out.alpha_bar = alpha_bar;
    out.eps = eps;
    out.constant_flag.resize(alpha_bar.size());
    for (std::size_t e = 0; e < alpha_bar.size(); ++e) {
        out.constant_flag[e] = std::abs(alpha_bar[e]) < eps;
        if (out.constant_flag[e]) ++out.constant_count;
    }
    return out;
}

inline EdgeClassification classify_edges(const ComplexSlice& slice,
                                         const std::vector<double>& alpha_bar, double eps = 1e-4) {
    EdgeClassification out = classify_edges(alpha_bar, eps);
    detail::UnionFind uf(slice.n);
    for (const auto& e : slice.edges) uf.unite(e.u, e.v);
    std::vector<std::size_t> counts(slice.n, 0);
    for (std::size_t e = 0; e < slice.edges.size(); ++e)
        if (out.constant_flag[e]) ++counts[uf.find(slice.edges[e].u)];
    for (int v = 0; v < slice.n; ++v)
        if (uf.find(v) == v) out.per_component.push_back(counts[v]);
    return out;
}

// Row-wise sum of the coordinate columns, reduced mod 1.
inline std::vector<double> combine_coords(const CircularCoordinates& cc) {
    if (cc.k() < 1) throw std::invalid_argument("combine_coords requires k >= 1");
    std::vector<double> combined(cc.n(), 0.0);
    for (const auto& col : cc.columns)
        for (std::size_t i = 0; i < combined.size(); ++i) combined[i] += col[i];
    for (double& x : combined) x = mod1(x);
    return combined;
}

// theta -> (cos 2*pi*theta, sin 2*pi*theta) per column, concatenated.
inline PointCloud torus_embed(const CircularCoordinates& cc) {
    if (cc.k() < 1) throw std::invalid_argument("torus_embed requires k >= 1");
    PointCloud cloud(cc.n(), 2 * cc.k());
    const double two_pi = 6.283185307179586476925286766559;
    for (std::size_t j = 0; j < cc.k(); ++j)
        for (std::size_t i = 0; i < cc.n(); ++i) {
            cloud.at(i, 2 * j) = std::cos(two_pi * cc.columns[j][i]);
            cloud.at(i, 2 * j + 1) = std::sin(two_pi * cc.columns[j][i]);
        }
    return cloud;
}

} // namespace circ
