#pragma once

#include "circ/distance.hpp"
#include "circ/point_cloud.hpp"
#include "circ/rips.hpp"
#include "circ/rng.hpp"

namespace helpers {

// Four points on an axis-aligned rectangle: a=(-1,0.5), b=(1,0.5),
// c=(1,-0.5), d=(-1,-0.5). Side lengths 1 and 2, diagonals sqrt(5).
inline circ::PointCloud square4() {
    circ::PointCloud cloud(4, 2);
    const double pts[4][2] = {{-1.0, 0.5}, {1.0, 0.5}, {1.0, -0.5}, {-1.0, -0.5}};
    for (int i = 0; i < 4; ++i) {
        cloud.at(i, 0) = pts[i][0];
        cloud.at(i, 1) = pts[i][1];
    }
    return cloud;
}

inline circ::Filtration square4_filtration(double max_scale = 2.0) {
    return circ::build_rips(circ::distance_matrix(square4()), max_scale, 2);
}

inline circ::PointCloud random_cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
    circ::Rng rng(seed);
    circ::PointCloud cloud(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) cloud.at(i, j) = rng.uniform(-1.0, 1.0);
    return cloud;
}

} // namespace helpers
