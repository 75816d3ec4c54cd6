#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "point_cloud.hpp"

namespace circ {

// Symmetric nonnegative matrix with zero diagonal.
struct DistanceMatrix {
    std::vector<double> data;
    std::size_t n = 0;

    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n_) : data(n_ * n_, 0.0), n(n_) {}

    double& at(std::size_t i, std::size_t j) { return data[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * n + j]; }

    void validate(double tol = 1e-12) const {
        for (std::size_t i = 0; i < n; ++i) {
            if (at(i, i) != 0.0) throw std::invalid_argument("distance matrix diagonal must be zero");
            for (std::size_t j = i + 1; j < n; ++j) {
                if (at(i, j) < 0.0) throw std::invalid_argument("distances must be nonnegative");
                if (std::abs(at(i, j) - at(j, i)) > tol)
                    throw std::invalid_argument("distance matrix must be symmetric");
            }
        }
    }
};

inline DistanceMatrix distance_matrix(const PointCloud& cloud) {
    cloud.validate();
    DistanceMatrix dm(cloud.n);
    for (std::size_t i = 0; i < cloud.n; ++i) {
        for (std::size_t j = i + 1; j < cloud.n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < cloud.d; ++k) {
                const double diff = cloud.at(i, k) - cloud.at(j, k);
                s += diff * diff;
            }
            dm.at(i, j) = dm.at(j, i) = std::sqrt(s);
        }
    }
    return dm;
}

inline DistanceMatrix distance_matrix_from_csv(const std::string& path) {
    PointCloud m = load_matrix(path);
    if (m.n != m.d) throw std::invalid_argument("distance matrix file must be square");
    DistanceMatrix dm(m.n);
    dm.data = m.data;
    dm.validate(1e-9);
    return dm;
}

// min over i of max over j of d(i, j); the default Rips cutoff.
inline double enclosing_radius(const DistanceMatrix& dm) {
    if (dm.n < 1) throw std::invalid_argument("empty distance matrix");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dm.n; ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < dm.n; ++j) worst = std::max(worst, dm.at(i, j));
        best = std::min(best, worst);
    }
    return best;
}

} // namespace circ
