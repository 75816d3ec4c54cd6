#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "distance.hpp"

namespace circ {

// Simplex of dimension 0-2; vertices strictly increasing, unused slots -1.
struct Simplex {
    std::array<int, 3> v{-1, -1, -1};
    int dim = 0;
    double value = 0.0;
};

inline bool filtration_less(const Simplex& a, const Simplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.v < b.v;
}

struct Edge {
    int u, v;
    double value;
};

// Vietoris-Rips filtration up to dimension 2, ordered by
// (value ascending, dim ascending, lexicographic vertices).
struct Filtration {
    int n = 0;
    double max_scale = 0.0;
    std::vector<Simplex> simplices;

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (const auto& s : simplices)
            if (s.dim == 1) out.push_back({s.v[0], s.v[1], s.value});
        return out;
    }
};

// Memory guard: refuses to enumerate a filtration whose simplex count
// exceeds the cap, reporting the estimated counts.
inline Filtration build_rips(const DistanceMatrix& dm, double max_scale, int max_dim = 2,
                             std::size_t max_simplices = 50'000'000) {
    if (!(max_scale > 0.0)) throw std::invalid_argument("max_scale must be positive");
    if (max_dim < 0 || max_dim > 2) throw std::invalid_argument("max_dim must be 0, 1 or 2");
    const int n = static_cast<int>(dm.n);

    std::size_t edge_count = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dm.at(i, j) <= max_scale) ++edge_count;

    std::size_t tri_count = 0;
    if (max_dim >= 2) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (dm.at(i, j) > max_scale) continue;
                for (int k = j + 1; k < n; ++k)
                    if (dm.at(i, k) <= max_scale && dm.at(j, k) <= max_scale) ++tri_count;
            }
    }
    const std::size_t total = static_cast<std::size_t>(n) + edge_count + tri_count;
    if (total > max_simplices)
        throw std::runtime_error("rips complex too large: " + std::to_string(n) + " vertices, " +
                                 std::to_string(edge_count) + " edges, " + std::to_string(tri_count) +
                                 " triangles exceed cap " + std::to_string(max_simplices));

    Filtration filt;
    filt.n = n;
    filt.max_scale = max_scale;
    filt.simplices.reserve(total);
    for (int i = 0; i < n; ++i) filt.simplices.push_back({{i, -1, -1}, 0, 0.0});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dm.at(i, j) <= max_scale) filt.simplices.push_back({{i, j, -1}, 1, dm.at(i, j)});
    if (max_dim >= 2) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double dij = dm.at(i, j);
                if (dij > max_scale) continue;
                for (int k = j + 1; k < n; ++k) {
                    const double dik = dm.at(i, k), djk = dm.at(j, k);
                    if (dik > max_scale || djk > max_scale) continue;
                    filt.simplices.push_back({{i, j, k}, 2, std::max({dij, dik, djk})});
                }
            }
    }
    std::stable_sort(filt.simplices.begin(), filt.simplices.end(), filtration_less);
    return filt;
}

// CSV dump: (dim, v0, v1, v2, value), blank for absent vertices.
inline void dump_filtration(const Filtration& filt, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "dim,v0,v1,v2,value\n";
    for (const auto& s : filt.simplices) {
        out << s.dim;
        for (int k = 0; k < 3; ++k) {
            out << ',';
            if (s.v[k] >= 0) out << s.v[k];
        }
        out << ',' << format_double(s.value) << "\n";
    }
}

} // namespace circ
