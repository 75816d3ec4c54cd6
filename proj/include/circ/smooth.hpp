#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lift.hpp"
#include "persistence.hpp"
#include "rng.hpp"

namespace circ {

// Penalty (1-lambda)*||alpha_bar||_p + lambda*||alpha_bar||_q. Defaults to
// the elastic-net mix p=1, q=2; exponent-2 terms are squared unless
// l2_squared is cleared. Only exponents 1 and 2 are supported.
struct PenaltyConfig {
    double lambda = 1.0;
    int p_exp = 1;
    int q_exp = 2;
    bool l2_squared = true;

    void validate() const {
        if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must lie in [0, 1]");
        if ((p_exp != 1 && p_exp != 2) || (q_exp != 1 && q_exp != 2))
            throw std::invalid_argument("unsupported penalty exponents: only 1 and 2 are implemented");
    }
};

enum class InitScheme { zeros, gaussian };

struct OptimizerConfig {
    double learning_rate = 1e-4;
    int steps = 1000;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    InitScheme init = InitScheme::zeros;
    double sigma = 0.1;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
        if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    }
};

// Edge values of the lifted cocycle in the slice's edge order; entries on
// edges absent from the cocycle are zero.
inline std::vector<double> alpha_vector(const ComplexSlice& slice, const IntegerCocycle& ic) {
    std::unordered_map<std::int64_t, double> coeff;
    const auto key = [&](int u, int v) { return static_cast<std::int64_t>(u) * slice.n + v; };
    for (const auto& e : ic.entries) coeff[key(e.u, e.v)] = static_cast<double>(e.coeff);
    std::vector<double> alpha(slice.edges.size(), 0.0);
    for (std::size_t e = 0; e < slice.edges.size(); ++e) {
        auto it = coeff.find(key(slice.edges[e].u, slice.edges[e].v));
        if (it != coeff.end()) alpha[e] = it->second;
    }
    return alpha;
}

// Coboundary with orientation (u < v), delta f(u, v) = f(u) - f(v).
inline std::vector<double> coboundary_apply(const std::vector<double>& f,
                                            const std::vector<Edge>& edges) {
    std::vector<double> out(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) out[e] = f[edges[e].u] - f[edges[e].v];
    return out;
}

inline std::vector<double> smoothed_cocycle(const std::vector<double>& alpha,
                                            const std::vector<double>& f,
                                            const std::vector<Edge>& edges) {
    std::vector<double> out = coboundary_apply(f, edges);
    for (std::size_t e = 0; e < edges.size(); ++e) out[e] += alpha[e];
    return out;
}

namespace detail {

inline double norm_term(const std::vector<double>& x, int exponent, bool squared) {
    if (exponent == 1) {
        double s = 0.0;
        for (double v : x) s += std::abs(v);
        return s;
    }
    double s = 0.0;
    for (double v : x) s += v * v;
    return squared ? s : std::sqrt(s);
}

} // namespace detail

inline double objective(const std::vector<double>& alpha, const std::vector<double>& f,
                        const std::vector<Edge>& edges, const PenaltyConfig& pc) {
    pc.validate();
    std::vector<double> bar = smoothed_cocycle(alpha, f, edges);
    return (1.0 - pc.lambda) * detail::norm_term(bar, pc.p_exp, pc.l2_squared) +
           pc.lambda * detail::norm_term(bar, pc.q_exp, pc.l2_squared);
}

namespace detail {

// d(objective)/d(alpha_bar_e), using sign(0) = 0 for the L1 subgradient.
inline std::vector<double> edge_gradient(const std::vector<double>& bar, const PenaltyConfig& pc) {
    std::vector<double> g(bar.size(), 0.0);
    auto add_term = [&](double weight, int exponent) {
        if (weight == 0.0) return;
        if (exponent == 1) {
            for (std::size_t e = 0; e < bar.size(); ++e)
                g[e] += weight * (bar[e] > 0.0 ? 1.0 : bar[e] < 0.0 ? -1.0 : 0.0);
        } else if (pc.l2_squared) {
            for (std::size_t e = 0; e < bar.size(); ++e) g[e] += weight * 2.0 * bar[e];
        } else {
            const double nrm = std::sqrt(norm_term(bar, 2, true));
            if (nrm > 0.0)
                for (std::size_t e = 0; e < bar.size(); ++e) g[e] += weight * bar[e] / nrm;
        }
    };
    add_term(1.0 - pc.lambda, pc.p_exp);
    add_term(pc.lambda, pc.q_exp);
    return g;
}

} // namespace detail

// Analytic gradient of the objective with respect to the vertex function.
inline std::vector<double> objective_gradient(const std::vector<double>& alpha,
                                              const std::vector<double>& f,
                                              const std::vector<Edge>& edges, int n,
                                              const PenaltyConfig& pc) {
    std::vector<double> bar = smoothed_cocycle(alpha, f, edges);
    std::vector<double> ge = detail::edge_gradient(bar, pc);
    std::vector<double> gv(n, 0.0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        gv[edges[e].u] += ge[e];
        gv[edges[e].v] -= ge[e];
    }
    return gv;
}

// Exact L2 minimizer of ||alpha + delta_0 f||^2: graph-Laplacian normal
// equations L f = -delta_0^T alpha, solved per connected component with the
// gauge f(smallest vertex of each component) = 0.
inline std::vector<double> smooth_l2_exact(const std::vector<double>& alpha,
                                           const ComplexSlice& slice) {
    if (alpha.size() != slice.edges.size())
        throw std::invalid_argument("alpha length must match edge count");
    const int n = slice.n;

    detail::UnionFind uf(n);
    for (const auto& e : slice.edges) uf.unite(e.u, e.v);
    // Gauge-fixed vertices: component roots (smallest index by construction).
    std::vector<int> reduced_index(n, -1);
    int free_count = 0;
    for (int v = 0; v < n; ++v)
        if (uf.find(v) != v) reduced_index[v] = free_count++;

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(free_count);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(slice.edges.size() * 4);
    for (std::size_t e = 0; e < slice.edges.size(); ++e) {
        const int u = slice.edges[e].u, v = slice.edges[e].v;
        const int ru = reduced_index[u], rv = reduced_index[v];
        if (ru >= 0) trip.emplace_back(ru, ru, 1.0);
        if (rv >= 0) trip.emplace_back(rv, rv, 1.0);
        if (ru >= 0 && rv >= 0) {
            trip.emplace_back(ru, rv, -1.0);
            trip.emplace_back(rv, ru, -1.0);
        }
        // rhs = -delta_0^T alpha restricted to free vertices
        if (ru >= 0) rhs[ru] -= alpha[e];
        if (rv >= 0) rhs[rv] += alpha[e];
    }

    std::vector<double> f(n, 0.0);
    if (free_count == 0) return f;
    Eigen::SparseMatrix<double> L(free_count, free_count);
    L.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(L);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("graph Laplacian factorization failed");
    Eigen::VectorXd sol = solver.solve(rhs);
    for (int v = 0; v < n; ++v)
        if (reduced_index[v] >= 0) f[v] = sol[reduced_index[v]];
    return f;
}

struct SmoothResult {
    std::vector<double> f;
    std::vector<double> trace; // objective value per step, trace[0] at init
};

// First-order solve of the generalized penalty problem with the Adam update
// rule; deterministic given the seed.
inline SmoothResult smooth_generalized(const std::vector<double>& alpha, const ComplexSlice& slice,
                                       const PenaltyConfig& pc, const OptimizerConfig& oc) {
    pc.validate();
    oc.validate();
    if (alpha.size() != slice.edges.size())
        throw std::invalid_argument("alpha length must match edge count");
    const int n = slice.n;

    SmoothResult res;
    res.f.assign(n, 0.0);
    if (oc.init == InitScheme::gaussian) {
        Rng rng(oc.seed);
        for (int v = 0; v < n; ++v) res.f[v] = oc.sigma * rng.normal();
    }
    res.trace.reserve(oc.steps + 1);
    res.trace.push_back(objective(alpha, res.f, slice.edges, pc));

    std::vector<double> m(n, 0.0), v2(n, 0.0);
    double b1t = 1.0, b2t = 1.0;
    for (int step = 1; step <= oc.steps; ++step) {
        std::vector<double> g = objective_gradient(alpha, res.f, slice.edges, n, pc);
        b1t *= oc.beta1;
        b2t *= oc.beta2;
        for (int i = 0; i < n; ++i) {
            m[i] = oc.beta1 * m[i] + (1.0 - oc.beta1) * g[i];
            v2[i] = oc.beta2 * v2[i] + (1.0 - oc.beta2) * g[i] * g[i];
            const double mhat = m[i] / (1.0 - b1t);
            const double vhat = v2[i] / (1.0 - b2t);
            res.f[i] -= oc.learning_rate * mhat / (std::sqrt(vhat) + oc.eps);
        }
        const double obj = objective(alpha, res.f, slice.edges, pc);
        if (!std::isfinite(obj))
            throw std::runtime_error("optimizer diverged at step " + std::to_string(step));
        res.trace.push_back(obj);
    }
    return res;
}

} // namespace circ
