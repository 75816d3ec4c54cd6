#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "distance.hpp"
#include "point_cloud.hpp"

namespace circ {

// Neighbor-rank co-occurrence matrix between a high- and a low-dimensional
// representation of the same points. Q is (n-1) x (n-1); rank ties are
// broken by ascending point index.
struct CorankingMatrix {
    std::vector<std::size_t> data; // row-major (n-1)^2
    std::size_t n = 0;

    std::size_t& at(std::size_t i, std::size_t j) { return data[i * (n - 1) + j]; }
    std::size_t at(std::size_t i, std::size_t j) const { return data[i * (n - 1) + j]; }
};

namespace detail {

// rank[j] = position (1-based) of j among i's neighbors, i excluded.
inline std::vector<std::size_t> neighbor_ranks(const DistanceMatrix& dm, std::size_t i) {
    std::vector<std::size_t> order;
    order.reserve(dm.n - 1);
    for (std::size_t j = 0; j < dm.n; ++j)
        if (j != i) order.push_back(j);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dm.at(i, a) != dm.at(i, b)) return dm.at(i, a) < dm.at(i, b);
        return a < b;
    });
    std::vector<std::size_t> rank(dm.n, 0);
    for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k + 1;
    return rank;
}

} // namespace detail

inline CorankingMatrix coranking(const DistanceMatrix& dh, const DistanceMatrix& dl) {
    if (dh.n != dl.n) throw std::invalid_argument("coranking: point counts differ");
    if (dh.n < 3) throw std::invalid_argument("coranking requires n >= 3");
    CorankingMatrix Q;
    Q.n = dh.n;
    Q.data.assign((Q.n - 1) * (Q.n - 1), 0);
    for (std::size_t i = 0; i < Q.n; ++i) {
        const auto rho = detail::neighbor_ranks(dh, i);
        const auto r = detail::neighbor_ranks(dl, i);
        for (std::size_t j = 0; j < Q.n; ++j)
            if (j != i) ++Q.at(rho[j] - 1, r[j] - 1);
    }
    return Q;
}

inline CorankingMatrix coranking(const PointCloud& high, const PointCloud& low) {
    if (high.n != low.n) throw std::invalid_argument("coranking: point counts differ");
    return coranking(distance_matrix(high), distance_matrix(low));
}

struct PcaResult {
    PointCloud projection;                 // n x k
    std::vector<double> explained_variance; // top-k eigenvalues, descending
    std::vector<std::vector<double>> components; // k vectors of length d
    bool rank_deficient = false;           // k exceeded rank; zero-padded
};

// Mean-centered projection onto the top-k covariance eigenvectors. When
// d > n the Gram-matrix trick keeps the eigenproblem at size n. Sign
// convention: each component's largest-magnitude entry is positive.
inline PcaResult pca(const PointCloud& cloud, std::size_t k) {
    cloud.validate();
    if (cloud.n < 2) throw std::invalid_argument("pca requires n >= 2");
    if (k > cloud.d) throw std::invalid_argument("pca: k must not exceed d");
    const std::size_t n = cloud.n, d = cloud.d;

    Eigen::MatrixXd X(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) X(i, j) = cloud.at(i, j);
    X.rowwise() -= X.colwise().mean();

    Eigen::MatrixXd components(d, k);
    Eigen::VectorXd eigenvalues(k);
    const double denom = static_cast<double>(n - 1);
    std::size_t available = 0;

    if (d <= n) {
        Eigen::MatrixXd cov = X.transpose() * X / denom;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
        for (std::size_t j = 0; j < k; ++j) {
            const Eigen::Index src = static_cast<Eigen::Index>(d - 1 - j);
            const double ev = es.eigenvalues()(src);
            if (ev > 1e-12 * std::max(1.0, es.eigenvalues()(d - 1))) {
                components.col(j) = es.eigenvectors().col(src);
                eigenvalues(j) = ev;
                ++available;
            } else {
                components.col(j).setZero();
                eigenvalues(j) = 0.0;
            }
        }
    } else {
        Eigen::MatrixXd gram = X * X.transpose() / denom;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        for (std::size_t j = 0; j < k; ++j) {
            const Eigen::Index src = static_cast<Eigen::Index>(n - 1 - j);
            const double ev = es.eigenvalues()(src);
            if (ev > 1e-12 * std::max(1.0, es.eigenvalues()(n - 1))) {
                Eigen::VectorXd v = X.transpose() * es.eigenvectors().col(src);
                components.col(j) = v / v.norm();
                eigenvalues(j) = ev;
                ++available;
            } else {
                components.col(j).setZero();
                eigenvalues(j) = 0.0;
            }
        }
    }

    // Fix signs: largest-magnitude entry positive.
    for (std::size_t j = 0; j < k; ++j) {
        Eigen::Index arg;
        if (components.col(j).cwiseAbs().maxCoeff(&arg) > 0.0 && components(arg, j) < 0.0)
            components.col(j) = -components.col(j);
    }

    PcaResult res;
    res.rank_deficient = available < k;
    res.projection = PointCloud(n, k);
    Eigen::MatrixXd proj = X * components;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) res.projection.at(i, j) = proj(i, j);
    for (std::size_t j = 0; j < k; ++j) {
        res.explained_variance.push_back(eigenvalues(j));
        res.components.emplace_back(components.col(j).data(), components.col(j).data() + d);
    }
    return res;
}

// Fraction of coranking mass inside the diagonal rank blocks induced by the
// cluster label sizes. 1.0 means neighbor ranks never leave their block.
inline double block_sharpness(const CorankingMatrix& Q, const std::vector<int>& labels) {
    if (labels.size() != Q.n) throw std::invalid_argument("labels length must equal n");
    std::map<int, std::size_t> sizes;
    for (int l : labels) ++sizes[l];

    // Block boundaries along the rank axes from cumulative cluster sizes.
    std::vector<std::size_t> bounds{0};
    std::size_t acc = 0;
    for (const auto& [label, count] : sizes) {
        acc += count;
        bounds.push_back(std::min(acc, Q.n - 1));
    }
    bounds.back() = Q.n - 1;

    std::size_t inside = 0, total = 0;
    for (std::size_t i = 0; i < Q.n - 1; ++i)
        for (std::size_t j = 0; j < Q.n - 1; ++j) {
            total += Q.at(i, j);
            for (std::size_t b = 0; b + 1 < bounds.size(); ++b)
                if (i >= bounds[b] && i < bounds[b + 1] && j >= bounds[b] && j < bounds[b + 1]) {
                    inside += Q.at(i, j);
                    break;
                }
        }
    return total == 0 ? 0.0 : static_cast<double>(inside) / static_cast<double>(total);
}

} // namespace circ
