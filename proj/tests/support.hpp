#pragma once

// Shared fixtures for the test suites: canonical shapes and small numeric
// helpers.

#include <cmath>
#include <cstdint>
#include <vector>

#include "polymin/geometry.hpp"
#include "polymin/rng.hpp"

namespace support {

using polymin::Configuration;
using polymin::Vec3;

inline Configuration unit_tetra() {
    return {{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, "unit-tetra"};
}

inline Configuration regular_tetra() {
    return {{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}, "regular-tetra"};
}

inline Configuration cube_corners() {
    Configuration c;
    c.label = "cube";
    for (int i = 0; i < 8; ++i)
        c.points.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
    return c;
}

inline Configuration octahedron() {
    return {{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}, "octahedron"};
}

inline Configuration icosahedron() {
    const double p = (1.0 + std::sqrt(5.0)) / 2.0;
    Configuration c;
    c.label = "icosahedron";
    for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) {
            c.points.push_back({0, s1, s2 * p});
            c.points.push_back({s1, s2 * p, 0});
            c.points.push_back({s1 * p, 0, s2});
        }
    return c;
}

inline Configuration random_sphere_config(int n, std::uint64_t seed) {
    polymin::Rng rng(seed);
    Configuration c;
    c.label = "random-sphere";
    for (int i = 0; i < n; ++i) c.points.push_back(rng.unit_vector());
    return c;
}

inline Configuration random_ball_config(int n, std::uint64_t seed) {
    polymin::Rng rng(seed);
    Configuration c;
    c.label = "random-ball";
    for (int i = 0; i < n; ++i) c.points.push_back(rng.ball_point(1.0));
    return c;
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace support
