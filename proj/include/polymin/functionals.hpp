#pragma once

// Closed-form quality constants, bi-pyramid constructions, the in-center
// condition, and apex refinement with its analytic update formulas.

#include <cmath>
#include <string>
#include <vector>

#include "polymin/geometry.hpp"
#include "polymin/hull.hpp"
#include "polymin/metrics.hpp"

namespace polymin {

struct NamedConstant {
    std::string name;
    int n = 0;           // vertex count the value refers to; 0 for the ball limit
    double value = 0;
    bool closed_form = false;
    std::string expression;  // printable form; 6-digit reference when numeric
};

inline double ball_limit() { return std::cbrt(36.0 * kPi); }

inline const std::vector<NamedConstant>& named_constants() {
    static const std::vector<NamedConstant> table = [] {
        std::vector<NamedConstant> t;
        t.push_back({"alpha4", 4, 6.0 * std::pow(3.0, 1.0 / 6.0), true, "6*3^(1/6)"});
        t.push_back({"alpha5", 5, std::pow(3.0, 5.0 / 3.0), true, "3^(5/3)"});
        t.push_back({"eta6", 6, std::pow(3.0, 7.0 / 6.0) * std::pow(2.0, 2.0 / 3.0), true,
                     "3^(7/6)*2^(2/3)"});
        t.push_back({"eta7", 7,
                     std::pow(3.0, 7.0 / 6.0) * std::pow(5.0, 5.0 / 12.0) *
                         std::pow(std::sqrt(5.0) - 2.0, 1.0 / 6.0),
                     true, "3^(7/6)*5^(5/12)*(sqrt(5)-2)^(1/6)"});
        t.push_back({"eta8", 8, 5.42118, false, "5.42118 (algebraic, degree-12 certificate)"});
        t.push_back({"eta9", 9, 5.31637, false, "5.31637 (algebraic, degree-13 certificate)"});
        t.push_back({"eta10", 10, 5.2533, false, "5.2533 (algebraic, degree-6 certificate)"});
        t.push_back({"bound11", 11, 5.207134373504469, false,
                     "5.207134373504469 (numeric upper bound)"});
        t.push_back({"eta12", 12, std::pow(3.0, 7.0 / 6.0) * std::cbrt(70.0 - 30.0 * std::sqrt(5.0)),
                     true, "3^(7/6)*(70-30*sqrt(5))^(1/3)"});
        t.push_back({"ball_limit", 0, std::cbrt(36.0 * kPi), true, "(36*pi)^(1/3)"});
        return t;
    }();
    return table;
}

inline const NamedConstant& named_constant(const std::string& name) {
    for (const auto& c : named_constants())
        if (c.name == name) return c;
    throw std::out_of_range("unknown constant: " + name);
}

inline const NamedConstant& reference_for_n(int n) {
    for (const auto& c : named_constants())
        if (c.n == n) return c;
    throw std::out_of_range("no reference value for n=" + std::to_string(n));
}

// Quality of the optimal (regular) k bi-pyramid.
inline double bipyramid_quality(int k) {
    if (k < 3 || k > 64) throw std::out_of_range("bipyramid k must be in [3,64]");
    double ang = (k - 2) * kPi / (2.0 * k);
    double cot = std::cos(ang) / std::sin(ang);
    return std::cbrt(std::pow(3.0, 3.5) * k * cot);
}

// Regular k-gon base circumscribed about the in-circle of radius h (apothem
// h), apexes at the given heights above and below the base plane.
inline Configuration bipyramid_with_apex(int k, double h, double apex_height) {
    if (k < 3 || k > 64) throw std::out_of_range("bipyramid k must be in [3,64]");
    if (h <= 0 || apex_height <= 0) throw DegenerateInput("bipyramid needs positive h and height");
    Configuration c;
    c.label = "bipyramid-" + std::to_string(k);
    double rc = h / std::cos(kPi / k);
    for (int j = 0; j < k; ++j) {
        double a = 2.0 * kPi * j / k;
        c.points.push_back({rc * std::cos(a), rc * std::sin(a), 0.0});
    }
    c.points.push_back({0, 0, apex_height});
    c.points.push_back({0, 0, -apex_height});
    return c;
}

// The optimal apex height is sqrt(2)h (the main diagonal has length h*sqrt(8)).
inline Configuration bipyramid_mesh(int k, double h) {
    return bipyramid_with_apex(k, h, std::sqrt(2.0) * h);
}

// Edge-length-weighted barycenter; equidistant from the three edges.
inline Vec3 incenter(const Vec3& A, const Vec3& B, const Vec3& C) {
    double a = dist(B, C), b = dist(C, A), c = dist(A, B);
    double area2 = norm(cross(B - A, C - A));
    double scale = std::max({a, b, c});
    if (area2 <= 1e-14 * scale * scale) throw DegenerateInput("collinear triangle");
    return (A * a + B * b + C * c) / (a + b + c);
}

namespace detail {

// Signed in-plane distances from a point (projected to the base plane) to the
// three base edge lines; positive on the triangle's interior side.
inline std::array<double, 3> foot_edge_distances(const Vec3& apex, const std::array<Vec3, 3>& b) {
    Vec3 n = normalized(cross(b[1] - b[0], b[2] - b[0]));
    Vec3 foot = apex - n * dot(apex - b[0], n);
    std::array<double, 3> h;
    for (int i = 0; i < 3; ++i) {
        const Vec3& p = b[i];
        const Vec3& q = b[(i + 1) % 3];
        const Vec3& opp = b[(i + 2) % 3];
        Vec3 edge = normalized(q - p);
        Vec3 inward = opp - p;
        inward = inward - edge * dot(inward, edge);
        inward = normalized(inward);
        h[i] = dot(foot - p, inward);
    }
    return h;
}

}  // namespace detail

// Max pairwise spread of the foot's distances to the base edges; zero iff the
// apex projects onto the in-center.
inline double incenter_residual(const Vec3& apex, const std::array<Vec3, 3>& base) {
    Vec3 n = cross(base[1] - base[0], base[2] - base[0]);
    double scale = std::max({dist(base[0], base[1]), dist(base[1], base[2]),
                             dist(base[2], base[0])});
    if (norm(n) <= 1e-14 * scale * scale) throw DegenerateInput("degenerate base triangle");
    if (std::fabs(dot(apex - base[0], normalized(n))) <= 1e-14 * scale)
        throw DegenerateInput("apex lies on the base plane");
    auto h = detail::foot_edge_distances(apex, base);
    double r = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) r = std::max(r, std::fabs(h[i] - h[j]));
    return r;
}

struct ApexRefineResult {
    Configuration config;      // original hull vertices plus the new apex
    Vec3 apex;
    double epsilon = 0;
    double base_area = 0;      // V2(T)
    double predicted_volume = 0;
    double predicted_area = 0;
    bool degenerate = false;   // epsilon == 0: new point lies on the face
};

// Add a vertex at distance eps above a merged face T along its outward
// normal, with the foot at the in-center (triangles) or area centroid.
// Predictions follow the pyramid update: V' = V + eps*V2(T)/3 and
// A' = A - V2(T) + (1/2) sum_i e_i sqrt(eps^2 + r_i^2).
inline ApexRefineResult apex_refine(const HullMesh& mesh, int group, double eps) {
    if (group < 0 || group >= static_cast<int>(mesh.coplanar_groups.size()))
        throw std::out_of_range("no such face group");
    if (eps < 0) throw EpsilonTooLarge("epsilon must be nonnegative");

    std::vector<int> loop = merged_face_loop(mesh, group);
    std::vector<Vec3> ring;
    for (int v : loop) ring.push_back(mesh.vertices[v]);

    Vec3 foot;
    if (ring.size() == 3) {
        foot = incenter(ring[0], ring[1], ring[2]);
    } else {
        // area centroid by fan decomposition
        Vec3 acc{0, 0, 0};
        double area = 0;
        for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
            double a = 0.5 * norm(cross(ring[i] - ring[0], ring[i + 1] - ring[0]));
            acc += (ring[0] + ring[i] + ring[i + 1]) * (a / 3.0);
            area += a;
        }
        foot = acc / area;
    }

    const Plane& pl = mesh.group_planes[group];
    Vec3 apex = foot + pl.normal * eps;

    // The update formulas hold only while the new point sees face T alone.
    double guard = 1e-12 * mesh.scale;
    for (std::size_t g = 0; g < mesh.group_planes.size(); ++g) {
        if (static_cast<int>(g) == group) continue;
        if (signed_distance(mesh.group_planes[g], apex) > guard)
            throw EpsilonTooLarge("new vertex sees face group " + std::to_string(g));
    }

    ApexRefineResult out;
    out.apex = apex;
    out.epsilon = eps;
    out.degenerate = (eps == 0);
    out.base_area = planar_loop_area(ring);

    double slant_sum = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Vec3& p = ring[i];
        const Vec3& q = ring[(i + 1) % ring.size()];
        double e = dist(p, q);
        Vec3 edge = normalized(q - p);
        Vec3 rel = foot - p;
        double r = norm(rel - edge * dot(rel, edge));
        slant_sum += e * std::sqrt(eps * eps + r * r);
    }
    out.predicted_volume = volume(mesh) + eps * out.base_area / 3.0;
    out.predicted_area = surface_area(mesh) - out.base_area + 0.5 * slant_sum;

    out.config.points = mesh.vertices;
    out.config.points.push_back(apex);
    out.config.label = "apex-refined";
    return out;
}

}  // namespace polymin
