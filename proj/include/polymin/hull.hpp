#pragma once

// Incremental 3D convex hull with exact-sign orientation tests, coplanar
// face grouping, and the merged edge structure used for valency counting.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "polymin/geometry.hpp"
#include "polymin/predicates.hpp"

namespace polymin {

// Tolerances, each scaled by the input diameter (or its cube).
inline constexpr double kDupTol = 1e-12;    // duplicate-point rejection
inline constexpr double kRankTol = 1e-10;   // affine rank: max tetra volume
inline constexpr double kPlaneTol = 1e-9;   // coplanar face merging

struct Plane {
    Vec3 normal{0, 0, 1};  // unit, outward
    double offset = 0;     // dot(normal, x) == offset on the plane
};

inline double signed_distance(const Plane& pl, const Vec3& p) {
    return dot(pl.normal, p) - pl.offset;
}

struct HullMesh {
    std::vector<Vec3> vertices;               // extreme points, input order
    std::vector<int> source_index;            // vertex -> index in the input configuration
    std::vector<std::array<int, 3>> faces;    // CCW seen from outside
    std::vector<Plane> face_planes;           // per triangle
    std::vector<std::vector<int>> coplanar_groups;  // partition of face ids (merged faces)
    std::vector<int> face_group;              // face id -> group id
    std::vector<Plane> group_planes;          // per merged face
    std::vector<std::array<int, 2>> edges;    // merged edges, sorted pairs, lexicographic
    double scale = 0;                         // input diameter; basis for tolerances
};

struct DiameterResult {
    double value = 0;
    std::array<int, 2> pair{{-1, -1}};
};

inline DiameterResult diameter(const std::vector<Vec3>& pts) {
    if (pts.size() < 2) throw DegenerateInput("diameter requires at least two points");
    DiameterResult r;
    double best = -1.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double d2 = dist2(pts[i], pts[j]);
            if (d2 > best) {  // strict: ties keep the lowest index pair
                best = d2;
                r.pair = {static_cast<int>(i), static_cast<int>(j)};
            }
        }
    r.value = std::sqrt(best);
    return r;
}

inline DiameterResult diameter(const Configuration& config) { return diameter(config.points); }

namespace detail {

struct NonManifoldHorizon {};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

inline std::uint64_t dir_edge_key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

// One construction pass over the active point subset. Insertion order is
// fixed (decreasing distance from the centroid) and rotated by `rot`; a
// rotation retry resolves the rare coplanar insertion order that produces a
// pinched horizon.
inline HullMesh hull_build_once(const std::vector<Vec3>& pts, const std::vector<int>& active,
                                int rot) {
    HullMesh mesh;

    double diam = 0;
    for (std::size_t i = 0; i + 1 < active.size(); ++i)
        for (std::size_t j = i + 1; j < active.size(); ++j)
            diam = std::max(diam, dist2(pts[active[i]], pts[active[j]]));
    diam = std::sqrt(diam);
    mesh.scale = diam;
    if (diam == 0) throw DegenerateInput("all points coincide");

    double dup_tol2 = kDupTol * diam * kDupTol * diam;
    for (std::size_t i = 0; i + 1 < active.size(); ++i)
        for (std::size_t j = i + 1; j < active.size(); ++j)
            if (dist2(pts[active[i]], pts[active[j]]) <= dup_tol2)
                throw DegenerateInput("duplicate points at indices " + std::to_string(active[i]) +
                                      "," + std::to_string(active[j]));

    // Initial simplex: the diameter pair, the point maximizing triangle area,
    // then the point maximizing tetrahedron volume.
    int i0 = -1, i1 = -1, i2 = -1, i3 = -1;
    {
        double best = -1.0;
        for (std::size_t i = 0; i + 1 < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                double d2 = dist2(pts[active[i]], pts[active[j]]);
                if (d2 > best) {
                    best = d2;
                    i0 = active[i];
                    i1 = active[j];
                }
            }
        best = -1.0;
        for (int k : active) {
            if (k == i0 || k == i1) continue;
            double a2 = norm2(cross(pts[i1] - pts[i0], pts[k] - pts[i0]));
            if (a2 > best) {
                best = a2;
                i2 = k;
            }
        }
        best = -1.0;
        double det_best = 0;
        for (int k : active) {
            if (k == i0 || k == i1 || k == i2) continue;
            double bound;
            double det = orient3d_apx(pts[i0], pts[i1], pts[i2], pts[k], &bound);
            if (std::fabs(det) > best) {
                best = std::fabs(det);
                det_best = det;
                i3 = k;
            }
        }
        if (i2 < 0 || i3 < 0 || best / 6.0 <= kRankTol * diam * diam * diam)
            throw DegenerateInput("points are affinely dependent (rank < 3)");
        if (det_best > 0) std::swap(i1, i2);  // want i3 below plane(i0,i1,i2)
    }

    std::vector<std::array<int, 3>> faces = {
        {i0, i1, i2}, {i0, i3, i1}, {i1, i3, i2}, {i2, i3, i0}};
    std::vector<char> alive(4, 1);

    // Remaining points, farthest from the centroid first.
    Vec3 c{0, 0, 0};
    for (int k : active) c += pts[k];
    c = c / static_cast<double>(active.size());
    std::vector<int> order;
    for (int k : active)
        if (k != i0 && k != i1 && k != i2 && k != i3) order.push_back(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double da = dist2(pts[a], c), db = dist2(pts[b], c);
        if (da != db) return da > db;
        return a < b;
    });
    if (!order.empty())
        std::rotate(order.begin(), order.begin() + (rot % order.size()), order.end());

    std::vector<char> vis;
    std::unordered_map<std::uint64_t, int> owner;
    for (int ip : order) {
        const Vec3& p = pts[ip];
        vis.assign(faces.size(), 0);
        bool any = false;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!alive[f]) continue;
            if (orient3d_sign(pts[faces[f][0]], pts[faces[f][1]], pts[faces[f][2]], p) > 0) {
                vis[f] = 1;
                any = true;
            }
        }
        if (!any) continue;  // interior or on the boundary: not an extreme point

        owner.clear();
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!alive[f]) continue;
            for (int e = 0; e < 3; ++e)
                owner[dir_edge_key(faces[f][e], faces[f][(e + 1) % 3])] = static_cast<int>(f);
        }

        std::vector<std::array<int, 2>> horizon;
        std::unordered_map<int, int> next_on_horizon;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!alive[f] || !vis[f]) continue;
            for (int e = 0; e < 3; ++e) {
                int u = faces[f][e], v = faces[f][(e + 1) % 3];
                auto it = owner.find(dir_edge_key(v, u));
                if (it == owner.end()) throw NonManifoldHorizon{};
                if (!vis[it->second]) {
                    if (!next_on_horizon.emplace(u, v).second) throw NonManifoldHorizon{};
                    horizon.push_back({u, v});
                }
            }
        }
        // The horizon must be one closed loop; a pinched or split loop means
        // a coplanar insertion-order accident, resolved by the caller's retry.
        {
            std::size_t steps = 0;
            int at = horizon.front()[0];
            do {
                auto it = next_on_horizon.find(at);
                if (it == next_on_horizon.end()) throw NonManifoldHorizon{};
                at = it->second;
                ++steps;
            } while (at != horizon.front()[0] && steps <= horizon.size());
            if (steps != horizon.size()) throw NonManifoldHorizon{};
        }

        for (std::size_t f = 0; f < faces.size(); ++f)
            if (alive[f] && vis[f]) alive[f] = 0;
        for (const auto& e : horizon) {
            faces.push_back({e[0], e[1], ip});
            alive.push_back(1);
        }
    }

    // Compact to the surviving faces; vertices keep their input order.
    std::vector<int> vmap(pts.size(), -1);
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (alive[f])
            for (int v : faces[f]) vmap[v] = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (vmap[i] == 0) {
            vmap[i] = static_cast<int>(mesh.vertices.size());
            mesh.vertices.push_back(pts[i]);
            mesh.source_index.push_back(static_cast<int>(i));
        }
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (alive[f]) mesh.faces.push_back({vmap[faces[f][0]], vmap[faces[f][1]], vmap[faces[f][2]]});

    mesh.face_planes.resize(mesh.faces.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const Vec3& a = mesh.vertices[mesh.faces[f][0]];
        const Vec3& b = mesh.vertices[mesh.faces[f][1]];
        const Vec3& cc = mesh.vertices[mesh.faces[f][2]];
        Vec3 n = normalized(cross(b - a, cc - a));
        mesh.face_planes[f] = {n, dot(n, (a + b + cc) / 3.0)};
    }

    // Merge adjacent coplanar triangles into groups.
    double tau = kPlaneTol * diam;
    std::unordered_map<std::uint64_t, std::array<int, 2>> und;
    und.reserve(3 * mesh.faces.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f)
        for (int e = 0; e < 3; ++e) {
            int u = mesh.faces[f][e], v = mesh.faces[f][(e + 1) % 3];
            auto key = dir_edge_key(std::min(u, v), std::max(u, v));
            auto it = und.find(key);
            if (it == und.end()) {
                und[key] = {static_cast<int>(f), -1};
            } else {
                if (it->second[1] >= 0) throw NonManifoldHorizon{};  // 3 faces on one edge
                it->second[1] = static_cast<int>(f);
            }
        }

    auto coplanar = [&](int f, int g) {
        for (int pass = 0; pass < 2; ++pass) {
            const Plane& pl = mesh.face_planes[pass == 0 ? f : g];
            for (int v : mesh.faces[pass == 0 ? g : f])
                if (std::fabs(signed_distance(pl, mesh.vertices[v])) > tau) return false;
        }
        return true;
    };

    UnionFind uf(static_cast<int>(mesh.faces.size()));
    for (const auto& [key, fg] : und) {
        (void)key;
        if (fg[1] < 0) throw NonManifoldHorizon{};  // open surface: should not happen
        if (coplanar(fg[0], fg[1])) uf.unite(fg[0], fg[1]);
    }

    std::unordered_map<int, int> root_to_group;
    mesh.face_group.assign(mesh.faces.size(), -1);
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        int r = uf.find(static_cast<int>(f));
        auto it = root_to_group.find(r);
        int g;
        if (it == root_to_group.end()) {
            g = static_cast<int>(mesh.coplanar_groups.size());
            root_to_group[r] = g;
            mesh.coplanar_groups.emplace_back();
        } else {
            g = it->second;
        }
        mesh.face_group[f] = g;
        mesh.coplanar_groups[g].push_back(static_cast<int>(f));
    }

    mesh.group_planes.resize(mesh.coplanar_groups.size());
    for (std::size_t g = 0; g < mesh.coplanar_groups.size(); ++g) {
        Vec3 nsum{0, 0, 0}, csum{0, 0, 0};
        double asum = 0;
        for (int f : mesh.coplanar_groups[g]) {
            const Vec3& a = mesh.vertices[mesh.faces[f][0]];
            const Vec3& b = mesh.vertices[mesh.faces[f][1]];
            const Vec3& cc = mesh.vertices[mesh.faces[f][2]];
            Vec3 n2v = cross(b - a, cc - a);
            double af = 0.5 * norm(n2v);
            nsum += n2v;
            csum += (a + b + cc) * (af / 3.0);
            asum += af;
        }
        Vec3 n = normalized(nsum);
        mesh.group_planes[g] = {n, dot(n, csum / asum)};
    }

    for (const auto& [key, fg] : und) {
        (void)key;
        if (mesh.face_group[fg[0]] != mesh.face_group[fg[1]]) {
            int u = static_cast<int>(key >> 32), v = static_cast<int>(key & 0xffffffffu);
            mesh.edges.push_back({u, v});
        }
    }
    std::sort(mesh.edges.begin(), mesh.edges.end());
    return mesh;
}

// Number of distinct merged faces incident to each vertex. A vertex of a
// full-dimensional polytope is extreme iff it touches at least three facets;
// fewer means the point lies inside a facet or on an edge.
inline std::vector<int> star_group_counts(const HullMesh& m) {
    std::vector<std::vector<int>> inc(m.vertices.size());
    for (std::size_t f = 0; f < m.faces.size(); ++f)
        for (int v : m.faces[f]) inc[v].push_back(m.face_group[f]);
    std::vector<int> counts(m.vertices.size());
    for (std::size_t v = 0; v < m.vertices.size(); ++v) {
        auto& g = inc[v];
        std::sort(g.begin(), g.end());
        counts[v] = static_cast<int>(std::unique(g.begin(), g.end()) - g.begin());
    }
    return counts;
}

}  // namespace detail

inline HullMesh convex_hull(const Configuration& config) {
    const auto& pts = config.points;
    if (pts.size() < 4) throw DegenerateInput("convex hull requires at least 4 points");
    for (const Vec3& p : pts)
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            throw DegenerateInput("non-finite coordinate");

    std::vector<int> active(pts.size());
    std::iota(active.begin(), active.end(), 0);

    for (std::size_t pass = 0; pass <= pts.size(); ++pass) {
        if (active.size() < 4) throw DegenerateInput("fewer than 4 extreme points");
        HullMesh mesh;
        bool built = false;
        int tries = std::max<int>(1, static_cast<int>(active.size()));
        for (int rot = 0; rot < tries; ++rot) {
            try {
                mesh = detail::hull_build_once(pts, active, rot);
                built = true;
                break;
            } catch (const detail::NonManifoldHorizon&) {
                continue;
            }
        }
        if (!built) throw DegenerateInput("could not build a manifold hull");

        // Drop a surviving non-extreme vertex (exactly on an edge or inside a
        // merged face) and rebuild without it. One vertex per pass: a sliver
        // can depress the span of true extreme points through the coplanar
        // merge, so bulk removal could discard good vertices.
        auto spans = detail::star_group_counts(mesh);
        int worst = -1;
        for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
            if (spans[v] < 3 && (worst < 0 || spans[v] < spans[static_cast<std::size_t>(worst)]))
                worst = static_cast<int>(v);
        if (worst < 0) return mesh;
        int dropped = mesh.source_index[static_cast<std::size_t>(worst)];
        std::vector<int> next;
        for (int k : active)
            if (k != dropped) next.push_back(k);
        active = std::move(next);
    }
    throw DegenerateInput("hull cleanup did not converge");
}

// Structural invariant audit; returns human-readable violations (empty = ok).
inline std::vector<std::string> hull_violations(const HullMesh& m, const Configuration& original) {
    std::vector<std::string> out;
    long long V = static_cast<long long>(m.vertices.size());
    long long E = static_cast<long long>(m.edges.size());
    long long G = static_cast<long long>(m.coplanar_groups.size());
    if (V - E + G != 2) out.push_back("Euler formula violated: V-E+F = " + std::to_string(V - E + G));

    Vec3 hc = centroid(m.vertices);
    for (std::size_t f = 0; f < m.faces.size(); ++f) {
        Vec3 fc = (m.vertices[m.faces[f][0]] + m.vertices[m.faces[f][1]] +
                   m.vertices[m.faces[f][2]]) / 3.0;
        if (dot(m.face_planes[f].normal, fc - hc) <= 0)
            out.push_back("face " + std::to_string(f) + " normal not outward");
    }

    double tau = kPlaneTol * m.scale;
    for (std::size_t i = 0; i < original.points.size(); ++i)
        for (std::size_t g = 0; g < m.group_planes.size(); ++g)
            if (signed_distance(m.group_planes[g], original.points[i]) > tau) {
                out.push_back("input point " + std::to_string(i) + " outside face plane " +
                              std::to_string(g));
                g = m.group_planes.size();  // one report per point
            }

    auto spans = detail::star_group_counts(m);
    for (std::size_t v = 0; v < m.vertices.size(); ++v)
        if (spans[v] < 3)
            out.push_back("vertex " + std::to_string(v) + " is not extreme");

    std::vector<int> deg(m.vertices.size(), 0);
    for (const auto& e : m.edges) {
        ++deg[e[0]];
        ++deg[e[1]];
    }
    long long degsum = 0;
    for (std::size_t v = 0; v < m.vertices.size(); ++v) {
        if (deg[v] < 3) out.push_back("vertex " + std::to_string(v) + " has degree < 3");
        degsum += deg[v];
    }
    if (degsum != 2 * E) out.push_back("degree sum != 2E");
    return out;
}

}  // namespace polymin
