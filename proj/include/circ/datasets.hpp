#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "point_cloud.hpp"
#include "rng.hpp"

namespace circ {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class SamplingScheme { parameter_uniform, volume_uniform };

inline SamplingScheme parse_scheme(const std::string& s) {
    if (s == "parameter_uniform" || s == "parameter") return SamplingScheme::parameter_uniform;
    if (s == "volume_uniform" || s == "volume") return SamplingScheme::volume_uniform;
    throw std::invalid_argument("unknown sampling scheme: " + s);
}

struct Rectangle {
    double u_lo, u_hi, v_lo, v_hi;
};

// Rejection sampler over a rectangular parameter domain: a parameter pair is
// retained with probability area_element(u, v) / area_sup, so accepted points
// are distributed proportionally to the area element of the parameterized
// surface. Loops until n acceptances.
inline PointCloud rejection_sample(const Rectangle& domain,
                                   const std::function<std::vector<double>(double, double)>& map,
                                   const std::function<double(double, double)>& area_element,
                                   double area_sup, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(area_sup > 0.0) || !std::isfinite(area_sup))
        throw std::invalid_argument("area element supremum must be finite and positive");

    Rng rng(seed);
    std::vector<std::vector<double>> accepted;
    accepted.reserve(n);
    std::size_t attempts = 0;
    const std::size_t cap = std::max<std::size_t>(10'000'000, n * 1000);
    while (accepted.size() < n) {
        const double u = rng.uniform(domain.u_lo, domain.u_hi);
        const double v = rng.uniform(domain.v_lo, domain.v_hi);
        const double coin = rng.uniform();
        ++attempts;
        const double a = area_element(u, v);
        if (a < 0.0) throw std::invalid_argument("area element must be nonnegative");
        if (coin <= a / area_sup) accepted.push_back(map(u, v));
        if (attempts >= cap && static_cast<double>(accepted.size()) < 1e-6 * attempts)
            throw std::runtime_error("rejection sampling acceptance rate below 1e-6");
    }

    PointCloud cloud(n, accepted.front().size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < cloud.d; ++j) cloud.at(i, j) = accepted[i][j];
    return cloud;
}

// Annulus of inner radius R and width w: (r, theta) uniform on [0,1]x[0,2pi),
// mapped to ((R + r*w) cos theta, (R + r*w) sin theta). The volume-uniform
// scheme accepts with probability proportional to the polar radius.
inline PointCloud generate_ring(double R, double w, std::size_t n, SamplingScheme scheme,
                                std::uint64_t seed) {
    if (!(R > 0.0) || w < 0.0 || n < 1) throw std::invalid_argument("generate_ring: invalid parameters");
    auto map = [R, w](double r, double theta) {
        const double rho = R + r * w;
        return std::vector<double>{rho * std::cos(theta), rho * std::sin(theta)};
    };
    const Rectangle dom{0.0, 1.0, 0.0, kTwoPi};
    if (scheme == SamplingScheme::parameter_uniform) {
        Rng rng(seed);
        PointCloud cloud(n, 2);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = rng.uniform();
            const double theta = rng.uniform(0.0, kTwoPi);
            auto p = map(r, theta);
            cloud.at(i, 0) = p[0];
            cloud.at(i, 1) = p[1];
        }
        return cloud;
    }
    auto area = [R, w](double r, double) { return R + r * w; };
    return rejection_sample(dom, map, area, R + w, n, seed);
}

inline PointCloud generate_double_ring(double R, double w, std::size_t n, SamplingScheme scheme,
                                       std::uint64_t seed) {
    if (n % 2 != 0) throw std::invalid_argument("generate_double_ring: n must be even");
    if (n < 2) throw std::invalid_argument("generate_double_ring: n must be >= 2");
    PointCloud left = generate_ring(R, w, n / 2, scheme, seed);
    PointCloud right = generate_ring(R, w, n / 2, scheme, seed + 1);
    PointCloud cloud(n, 2);
    for (std::size_t i = 0; i < n / 2; ++i) {
        cloud.at(i, 0) = left.at(i, 0) - 2.0;
        cloud.at(i, 1) = left.at(i, 1);
        cloud.at(n / 2 + i, 0) = right.at(i, 0) + 2.0;
        cloud.at(n / 2 + i, 1) = right.at(i, 1);
    }
    return cloud;
}

// Pinched torus (a degenerate Dupin cyclide).
inline std::array<double, 3> dupin_point(double r, double R, double x, double y) {
    const double s = r + std::sin(x / 2.0) * std::cos(y);
    return {s * R * std::cos(x), s * R * std::sin(x), R * std::sin(x / 2.0) * std::sin(y)};
}

namespace detail {

// Area element |X_u x X_v| of the pinched-torus map, from central differences.
inline double dupin_area_element(double r, double R, double x, double y) {
    const double h = 1e-5;
    auto pxp = dupin_point(r, R, x + h, y), pxm = dupin_point(r, R, x - h, y);
    auto pyp = dupin_point(r, R, x, y + h), pym = dupin_point(r, R, x, y - h);
    std::array<double, 3> du, dv;
    for (int k = 0; k < 3; ++k) {
        du[k] = (pxp[k] - pxm[k]) / (2.0 * h);
        dv[k] = (pyp[k] - pym[k]) / (2.0 * h);
    }
    const double cx = du[1] * dv[2] - du[2] * dv[1];
    const double cy = du[2] * dv[0] - du[0] * dv[2];
    const double cz = du[0] * dv[1] - du[1] * dv[0];
    return std::sqrt(cx * cx + cy * cy + cz * cz);
}

} // namespace detail

inline PointCloud generate_dupin(double r, double R, std::size_t n, SamplingScheme scheme,
                                 std::uint64_t seed) {
    if (!(r > 1.0) || !(R > 0.0) || n < 1) throw std::invalid_argument("generate_dupin: invalid parameters");
    auto map = [r, R](double x, double y) {
        auto p = dupin_point(r, R, x, y);
        return std::vector<double>{p[0], p[1], p[2]};
    };
    const Rectangle dom{0.0, kTwoPi, 0.0, kTwoPi};
    if (scheme == SamplingScheme::parameter_uniform) {
        Rng rng(seed);
        PointCloud cloud(n, 3);
        for (std::size_t i = 0; i < n; ++i) {
            auto p = map(rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi));
            for (int k = 0; k < 3; ++k) cloud.at(i, k) = p[k];
        }
        return cloud;
    }
    // Supremum of the area element from a dense grid, inflated 5% for safety.
    double sup = 0.0;
    const int grid = 512;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
            sup = std::max(sup, detail::dupin_area_element(r, R, (i + 0.5) * kTwoPi / grid,
                                                           (j + 0.5) * kTwoPi / grid));
    sup *= 1.05;
    auto area = [r, R](double x, double y) { return detail::dupin_area_element(r, R, x, y); };
    return rejection_sample(dom, map, area, sup, n, seed);
}

// n points equidistant by arc length along two unit circles tangent at the
// origin (centers (+-1, 0)). The second circle's phase is offset by half a
// step so the tangency point is not generated twice.
inline PointCloud generate_figure8_2d(std::size_t n) {
    if (n < 8) throw std::invalid_argument("generate_figure8_2d: n must be >= 8");
    const std::size_t n1 = (n + 1) / 2, n2 = n - n1;
    PointCloud cloud(n, 2);
    for (std::size_t k = 0; k < n1; ++k) {
        const double phi = kTwoPi * k / n1; // phi = 0 points at the origin
        cloud.at(k, 0) = 1.0 - std::cos(phi);
        cloud.at(k, 1) = std::sin(phi);
    }
    for (std::size_t k = 0; k < n2; ++k) {
        const double phi = kTwoPi * (k + 0.5) / n2;
        cloud.at(n1 + k, 0) = -1.0 + std::cos(phi);
        cloud.at(n1 + k, 1) = std::sin(phi);
    }
    return cloud;
}

// n points on two unit circles in R^3 touching orthogonally at (0, -1, 0):
// the circle x^2+y^2=1 in the plane z=0, and the circle centered at
// (y, z) = (-1, -1) in the plane x=0. Equidistant per circle; the second
// circle's phase is offset by half a step to avoid the shared point.
inline PointCloud generate_two_circles_3d(std::size_t n) {
    if (n < 8) throw std::invalid_argument("generate_two_circles_3d: n must be >= 8");
    const std::size_t n1 = (n + 1) / 2, n2 = n - n1;
    PointCloud cloud(n, 3);
    for (std::size_t k = 0; k < n1; ++k) {
        const double phi = kTwoPi * k / n1;
        cloud.at(k, 0) = std::cos(phi);
        cloud.at(k, 1) = std::sin(phi);
        cloud.at(k, 2) = 0.0;
    }
    for (std::size_t k = 0; k < n2; ++k) {
        // phi = 0 would land on the tangency point (0, -1, 0)
        const double phi = kTwoPi * (k + 0.5) / n2;
        cloud.at(n1 + k, 0) = 0.0;
        cloud.at(n1 + k, 1) = -1.0 + std::sin(phi);
        cloud.at(n1 + k, 2) = -1.0 + std::cos(phi);
    }
    return cloud;
}

} // namespace circ
