#pragma once

// Geometric functionals over hull meshes: volume, surface area, the quality
// ratio Q = A3/V3^{2/3}, valency vectors, diameters, and planar projections.

#include <algorithm>
#include <array>
#include <vector>

#include "polymin/geometry.hpp"
#include "polymin/hull.hpp"

namespace polymin {

// Signed tetrahedra from the vertex centroid; the centroid keeps the
// summands small and of one sign, which is kinder to cancellation than the
// origin would be.
inline double volume(const HullMesh& m) {
    Vec3 c = centroid(m.vertices);
    double v = 0;
    for (const auto& f : m.faces) {
        Vec3 a = m.vertices[f[0]] - c;
        Vec3 b = m.vertices[f[1]] - c;
        Vec3 d = m.vertices[f[2]] - c;
        v += dot(cross(a, b), d);
    }
    return v / 6.0;
}

inline double surface_area(const HullMesh& m) {
    double a = 0;
    for (const auto& f : m.faces) {
        Vec3 u = m.vertices[f[1]] - m.vertices[f[0]];
        Vec3 v = m.vertices[f[2]] - m.vertices[f[0]];
        a += norm(cross(u, v));
    }
    return 0.5 * a;
}

inline double quality(const HullMesh& m) {
    double v = volume(m);
    return surface_area(m) / std::cbrt(v * v);
}

using ValencyVector = std::vector<int>;

// Vertex degrees over merged edges, sorted ascending.
inline ValencyVector valency_vector(const HullMesh& m) {
    ValencyVector deg(m.vertices.size(), 0);
    for (const auto& e : m.edges) {
        ++deg[e[0]];
        ++deg[e[1]];
    }
    std::sort(deg.begin(), deg.end());
    return deg;
}

inline bool all_faces_triangular(const HullMesh& m) {
    for (const auto& g : m.coplanar_groups)
        if (g.size() != 1) return false;
    return true;
}

// 2D convex polygon, CCW. A degenerate (collinear) projection collapses to
// its two extreme points: area 0, perimeter twice the segment length.
struct Polygon2 {
    std::vector<std::array<double, 2>> pts;
};

inline double polygon_area(const Polygon2& poly) {
    double s = 0;
    std::size_t n = poly.pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = poly.pts[i];
        const auto& b = poly.pts[(i + 1) % n];
        s += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * std::fabs(s);
}

inline double polygon_perimeter(const Polygon2& poly) {
    double s = 0;
    std::size_t n = poly.pts.size();
    if (n < 2) return 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = poly.pts[i];
        const auto& b = poly.pts[(i + 1) % n];
        s += std::hypot(b[0] - a[0], b[1] - a[1]);
    }
    return s;
}

namespace detail {

// Monotone chain 2D hull, CCW, collinear points dropped.
inline Polygon2 hull2d(std::vector<std::array<double, 2>> p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    Polygon2 out;
    if (p.size() <= 2) {
        out.pts = p;
        return out;
    }
    auto cross2 = [](const std::array<double, 2>& o, const std::array<double, 2>& a,
                     const std::array<double, 2>& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<std::array<double, 2>> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross2(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross2(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    out.pts = std::move(h);
    return out;
}

// Deterministic orthonormal basis of the plane orthogonal to d.
inline std::array<Vec3, 2> plane_basis(const Vec3& d) {
    Vec3 n = normalized(d);
    Vec3 pick = std::fabs(n.x) <= std::fabs(n.y)
                    ? (std::fabs(n.x) <= std::fabs(n.z) ? Vec3{1, 0, 0} : Vec3{0, 0, 1})
                    : (std::fabs(n.y) <= std::fabs(n.z) ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    Vec3 u = normalized(cross(n, pick));
    Vec3 v = cross(n, u);
    return {u, v};
}

}  // namespace detail

// Convex hull of the points projected along `direction`. Area and perimeter
// of the result do not depend on the in-plane basis choice.
inline Polygon2 orthogonal_project(const Configuration& config, const Vec3& direction) {
    if (norm2(direction) == 0) throw DegenerateInput("projection direction is zero");
    auto [u, v] = detail::plane_basis(direction);
    std::vector<std::array<double, 2>> p;
    p.reserve(config.points.size());
    for (const Vec3& q : config.points) p.push_back({dot(q, u), dot(q, v)});
    return detail::hull2d(std::move(p));
}

// Area and perimeter of an ordered planar loop embedded in 3-space.
inline double planar_loop_area(const std::vector<Vec3>& loop) {
    Vec3 s{0, 0, 0};
    std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) s += cross(loop[i], loop[(i + 1) % n]);
    return 0.5 * norm(s);
}

inline double planar_loop_perimeter(const std::vector<Vec3>& loop) {
    double s = 0;
    std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) s += dist(loop[i], loop[(i + 1) % n]);
    return s;
}

// Boundary vertex loop of a merged face, CCW seen from outside.
inline std::vector<int> merged_face_loop(const HullMesh& m, int group) {
    std::vector<std::array<int, 2>> boundary;
    for (int f : m.coplanar_groups[group]) {
        for (int e = 0; e < 3; ++e) {
            int u = m.faces[f][e], v = m.faces[f][(e + 1) % 3];
            bool internal = false;
            // the reversed edge owned by a face of the same group is internal
            for (int g2 : m.coplanar_groups[group]) {
                if (g2 == f) continue;
                for (int e2 = 0; e2 < 3; ++e2)
                    if (m.faces[g2][e2] == v && m.faces[g2][(e2 + 1) % 3] == u) internal = true;
            }
            if (!internal) boundary.push_back({u, v});
        }
    }
    std::vector<int> loop;
    if (boundary.empty()) return loop;
    loop.push_back(boundary[0][0]);
    int at = boundary[0][1];
    while (at != loop[0] && loop.size() < boundary.size()) {
        loop.push_back(at);
        int nxt = -1;
        for (const auto& e : boundary)
            if (e[0] == at) {
                nxt = e[1];
                break;
            }
        if (nxt < 0) break;
        at = nxt;
    }
    return loop;
}

}  // namespace polymin
