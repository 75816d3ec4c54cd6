#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "field.hpp"
#include "rips.hpp"

namespace circ {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct CocycleEntry {
    int u, v;     // edge, u < v
    int coeff;    // nonzero residue mod p
    double value; // filtration value of the edge
};

// Representative 1-cocycle over Z_p, valid on the complex at `scale`.
struct Cocycle {
    std::vector<CocycleEntry> entries;
    double scale = 0.0;
};

inline Cocycle restrict_cocycle(const Cocycle& c, double t) {
    Cocycle out;
    out.scale = t;
    for (const auto& e : c.entries)
        if (e.value <= t) out.entries.push_back(e);
    return out;
}

struct PersistencePair {
    int dim;
    double birth;
    double death; // kInf for essential classes
    int cocycle_id = -1;
    double persistence() const { return death - birth; }
};

struct Barcode {
    int p = 23;
    double max_scale = 0.0;
    std::vector<PersistencePair> pairs;
    std::vector<Cocycle> cocycles;
};

// Simplices with value <= t; vertices are always all present.
struct ComplexSlice {
    int n = 0;
    double scale = 0.0;
    std::vector<Edge> edges;                     // sorted by (u, v)
    std::vector<std::array<int, 3>> triangles;   // sorted lexicographically
};

inline ComplexSlice restrict_to_scale(const Filtration& filt, double t) {
    if (t < 0.0 || t > filt.max_scale)
        throw std::invalid_argument("scale outside [0, max_scale]");
    ComplexSlice slice;
    slice.n = filt.n;
    slice.scale = t;
    for (const auto& s : filt.simplices) {
        if (s.value > t) continue;
        if (s.dim == 1) slice.edges.push_back({s.v[0], s.v[1], s.value});
        else if (s.dim == 2) slice.triangles.push_back({s.v[0], s.v[1], s.v[2]});
    }
    auto edge_less = [](const Edge& a, const Edge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    };
    std::sort(slice.edges.begin(), slice.edges.end(), edge_less);
    std::sort(slice.triangles.begin(), slice.triangles.end());
    return slice;
}

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

// Entry of an implicit coboundary column: a triangle (a<b<c) with a
// coefficient mod p. Heap order follows the filtration position of the
// triangle, (value, lexicographic vertices), so the top is the cofacet
// earliest in the filtration (the reduction pivot).
struct TriEntry {
    double value;
    std::int64_t key; // lexicographic encoding of (a, b, c)
    int a, b, c;
    int coeff;
};

struct TriEntryLater {
    bool operator()(const TriEntry& x, const TriEntry& y) const {
        if (x.value != y.value) return x.value > y.value;
        return x.key > y.key;
    }
};

using TriHeap = std::priority_queue<TriEntry, std::vector<TriEntry>, TriEntryLater>;

} // namespace detail

// Persistent cohomology of the filtration over Z_p, dimensions 0 and 1.
// Dimension 0 via union-find; dimension 1 by reducing implicit coboundary
// columns in reverse filtration order with the clearing optimization
// (edges paired in dimension 0 are skipped). Every dimension-1 pair carries
// a representative cocycle valid on the complex at any scale in
// [birth, death); the stored representative is evaluated at death - eps.
inline Barcode persistent_cohomology(const Filtration& filt, int p = 23) {
    const Field fp(p);
    const int n = filt.n;
    Barcode barcode;
    barcode.p = p;
    barcode.max_scale = filt.max_scale;

    std::vector<Edge> edges = filt.edges(); // already in filtration order
    const int m = static_cast<int>(edges.size());

    // Dimension 0: union-find over edges in filtration order.
    std::vector<char> is_merge(m, 0);
    {
        detail::UnionFind uf(n);
        for (int e = 0; e < m; ++e) {
            if (uf.unite(edges[e].u, edges[e].v)) {
                is_merge[e] = 1;
                if (edges[e].value > 0.0)
                    barcode.pairs.push_back({0, 0.0, edges[e].value, -1});
            }
        }
        int components = 0;
        for (int v = 0; v < n; ++v)
            if (uf.find(v) == v) ++components;
        for (int c = 0; c < components; ++c) barcode.pairs.push_back({0, 0.0, kInf, -1});
    }

    // Adjacency with edge values, for implicit cofacet enumeration.
    std::vector<std::unordered_map<int, double>> nbr(n);
    std::vector<std::vector<std::pair<int, double>>> nbr_list(n);
    for (const auto& e : edges) {
        nbr[e.u][e.v] = e.value;
        nbr[e.v][e.u] = e.value;
        nbr_list[e.u].push_back({e.v, e.value});
        nbr_list[e.v].push_back({e.u, e.value});
    }

    std::unordered_map<std::int64_t, int> edge_index; // key (u,v) -> index
    auto ekey = [n](int u, int v) { return static_cast<std::int64_t>(u) * n + v; };
    for (int e = 0; e < m; ++e) edge_index[ekey(edges[e].u, edges[e].v)] = e;

    auto tri_key = [n](int a, int b, int c) {
        return (static_cast<std::int64_t>(a) * n + b) * n + c;
    };

    // Coboundary of an edge dual: for each common neighbor w of (u, v) the
    // triangle sorted(u, v, w) with sign +1 unless w is the middle vertex.
    auto push_coboundary = [&](detail::TriHeap& heap, int e, int factor) {
        const int u = edges[e].u, v = edges[e].v;
        const double euv = edges[e].value;
        const auto& small = nbr_list[u].size() < nbr_list[v].size() ? nbr_list[u] : nbr_list[v];
        const auto& other = nbr_list[u].size() < nbr_list[v].size() ? nbr[v] : nbr[u];
        for (const auto& [w, dw] : small) {
            if (w == u || w == v) continue;
            auto it = other.find(w);
            if (it == other.end()) continue;
            const double val = std::max({euv, dw, it->second});
            int a = u, b = v, c = w;
            int sign = 1;
            if (w < u) {
                a = w; b = u; c = v;
            } else if (w < v) {
                a = u; b = w; c = v;
                sign = -1;
            }
            const int coeff = sign > 0 ? factor : fp.neg(factor);
            heap.push({val, tri_key(a, b, c), a, b, c, coeff});
        }
    };

    struct OwnerColumn {
        int edge = -1;
        int pivot_coeff = 0;
        bool shortcut = false;                      // reduced column == initial coboundary
        std::vector<detail::TriEntry> column;       // consolidated, pivot first
        std::vector<std::pair<int, int>> vcol;      // (edge index, coeff)
    };
    std::vector<OwnerColumn> owners;
    std::unordered_map<std::int64_t, int> pivot_owner;

    auto get_pivot = [&](detail::TriHeap& heap) -> std::optional<detail::TriEntry> {
        while (!heap.empty()) {
            detail::TriEntry top = heap.top();
            heap.pop();
            long long acc = top.coeff;
            while (!heap.empty() && heap.top().key == top.key && heap.top().value == top.value) {
                acc += heap.top().coeff;
                heap.pop();
            }
            top.coeff = fp.normalize(acc);
            if (top.coeff != 0) return top;
        }
        return std::nullopt;
    };

    // Columns in reverse filtration order (edges are stored ascending).
    std::vector<int> columns;
    for (int e = m - 1; e >= 0; --e)
        if (!is_merge[e]) columns.push_back(e);

    const double eps = 1e-9 * filt.max_scale;

    auto emit_pair = [&](int e, double death, const std::map<int, int>& vmap) {
        Cocycle rep;
        rep.scale = std::isinf(death) ? filt.max_scale : death - eps;
        for (const auto& [idx, coeff] : vmap) {
            if (coeff == 0) continue;
            if (edges[idx].value > rep.scale) continue;
            rep.entries.push_back({edges[idx].u, edges[idx].v, coeff, edges[idx].value});
        }
        barcode.cocycles.push_back(std::move(rep));
        barcode.pairs.push_back({1, edges[e].value, death,
                                 static_cast<int>(barcode.cocycles.size()) - 1});
    };

    for (int e : columns) {
        detail::TriHeap heap;
        push_coboundary(heap, e, 1);
        std::map<int, int> vmap; // edge index -> coeff, ordered for determinism
        vmap[e] = 1;
        bool pure = true;

        for (;;) {
            auto piv = get_pivot(heap);
            if (!piv) {
                emit_pair(e, kInf, vmap);
                break;
            }
            auto it = pivot_owner.find(piv->key);
            if (it == pivot_owner.end()) {
                OwnerColumn oc;
                oc.edge = e;
                oc.pivot_coeff = piv->coeff;
                if (pure && piv->value == edges[e].value) {
                    oc.shortcut = true; // apparent pair, zero persistence
                } else {
                    heap.push(*piv);
                    while (auto entry = get_pivot(heap)) oc.column.push_back(*entry);
                    for (const auto& [idx, coeff] : vmap)
                        if (coeff != 0) oc.vcol.push_back({idx, coeff});
                    if (piv->value > edges[e].value) emit_pair(e, piv->value, vmap);
                }
                pivot_owner.emplace(piv->key, static_cast<int>(owners.size()));
                owners.push_back(std::move(oc));
                break;
            }
            pure = false;
            const OwnerColumn& oc = owners[it->second];
            const int factor = fp.neg(fp.mul(piv->coeff, fp.inv(oc.pivot_coeff)));
            heap.push(*piv); // cancels against the owner's pivot entry
            if (oc.shortcut) {
                push_coboundary(heap, oc.edge, factor);
                vmap[oc.edge] = fp.normalize(vmap[oc.edge] + static_cast<long long>(factor));
            } else {
                for (const auto& entry : oc.column) {
                    detail::TriEntry scaled = entry;
                    scaled.coeff = fp.mul(entry.coeff, factor);
                    heap.push(scaled);
                }
                for (const auto& [idx, coeff] : oc.vcol)
                    vmap[idx] = fp.normalize(vmap[idx] + static_cast<long long>(fp.mul(coeff, factor)));
            }
        }
    }

    auto pair_less = [](const PersistencePair& a, const PersistencePair& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    };
    std::stable_sort(barcode.pairs.begin(), barcode.pairs.end(), pair_less);
    return barcode;
}

// Finite and essential dimension-1 classes with persistence > tau, sorted by
// persistence descending (essential classes first). top_k = 0 keeps all.
inline std::vector<PersistencePair> significant_cocycles(const Barcode& barcode, double tau,
                                                         std::size_t top_k = 0) {
    if (tau < 0.0) throw std::invalid_argument("tau must be >= 0");
    std::vector<PersistencePair> out;
    for (const auto& pr : barcode.pairs)
        if (pr.dim == 1 && pr.persistence() > tau) out.push_back(pr);
    std::stable_sort(out.begin(), out.end(), [](const PersistencePair& a, const PersistencePair& b) {
        if (a.persistence() != b.persistence()) return a.persistence() > b.persistence();
        return a.birth < b.birth;
    });
    if (top_k > 0 && out.size() > top_k) out.resize(top_k);
    return out;
}

namespace detail {

inline int rank_mod_p(std::vector<std::vector<int>>& mat, const Field& fp) {
    const std::size_t rows = mat.size();
    if (rows == 0) return 0;
    const std::size_t cols = mat[0].size();
    int rank = 0;
    std::size_t pivot_col = 0;
    for (std::size_t r = 0; r < rows && pivot_col < cols; ++pivot_col) {
        std::size_t sel = r;
        while (sel < rows && mat[sel][pivot_col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(mat[r], mat[sel]);
        const int inv = fp.inv(mat[r][pivot_col]);
        for (std::size_t j = pivot_col; j < cols; ++j) mat[r][j] = fp.mul(mat[r][j], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || mat[i][pivot_col] == 0) continue;
            const int f = mat[i][pivot_col];
            for (std::size_t j = pivot_col; j < cols; ++j)
                mat[i][j] = fp.sub(mat[i][j], fp.mul(f, mat[r][j]));
        }
        ++rank;
        ++r;
    }
    return rank;
}

} // namespace detail

// Independent test oracle: Betti numbers of the complex at `scale` via dense
// Gaussian elimination over Z_p on the boundary matrices.
inline std::pair<int, int> betti_oracle(const Filtration& filt, double scale, int p = 23) {
    const Field fp(p);
    ComplexSlice slice = restrict_to_scale(filt, scale);
    const std::size_t total = static_cast<std::size_t>(slice.n) + slice.edges.size() + slice.triangles.size();
    if (total > 2000) throw std::runtime_error("betti_oracle guard: complex has > 2000 simplices");

    const std::size_t E = slice.edges.size(), T = slice.triangles.size();
    std::unordered_map<std::int64_t, int> edge_pos;
    for (std::size_t e = 0; e < E; ++e)
        edge_pos[static_cast<std::int64_t>(slice.edges[e].u) * slice.n + slice.edges[e].v] =
            static_cast<int>(e);

    // boundary_1: rows = vertices, columns = edges
    std::vector<std::vector<int>> b1(slice.n, std::vector<int>(std::max<std::size_t>(E, 1), 0));
    for (std::size_t e = 0; e < E; ++e) {
        b1[slice.edges[e].u][e] = 1;
        b1[slice.edges[e].v][e] = fp.neg(1);
    }
    const int rank1 = E ? detail::rank_mod_p(b1, fp) : 0;

    // boundary_2: rows = edges, columns = triangles
    int rank2 = 0;
    if (T > 0) {
        std::vector<std::vector<int>> b2(E, std::vector<int>(T, 0));
        for (std::size_t t = 0; t < T; ++t) {
            const auto& tri = slice.triangles[t];
            const auto key = [&](int a, int b) { return static_cast<std::int64_t>(a) * slice.n + b; };
            b2[edge_pos[key(tri[1], tri[2])]][t] = 1;
            b2[edge_pos[key(tri[0], tri[2])]][t] = fp.neg(1);
            b2[edge_pos[key(tri[0], tri[1])]][t] = 1;
        }
        rank2 = detail::rank_mod_p(b2, fp);
    }

    const int beta0 = slice.n - rank1;
    const int beta1 = static_cast<int>(E) - rank1 - rank2;
    return {beta0, beta1};
}

// Betti numbers implied by the barcode at a given scale (bars alive at t).
inline std::pair<int, int> betti_from_barcode(const Barcode& barcode, double t) {
    int b0 = 0, b1 = 0;
    for (const auto& pr : barcode.pairs) {
        if (pr.birth <= t && t < pr.death) {
            if (pr.dim == 0) ++b0;
            else ++b1;
        }
    }
    return {b0, b1};
}

} // namespace circ
