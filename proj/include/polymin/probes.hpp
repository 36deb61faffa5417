#pragma once

// Numerical probes of the two level-set surfaces attached to a fixed base
// configuration: the area surface {v : A3(hull(base + v)) = h} and the volume
// polyhedron {v : V3(hull(base + v)) <= v0}. Covers singular-point detection
// on edge prolongations, one-sided gradients per arrangement cell, midpoint
// convexity sampling, level-set containment, and single-vertex rigidity.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "polymin/hull.hpp"
#include "polymin/metrics.hpp"
#include "polymin/rng.hpp"
#include "polymin/search.hpp"

namespace polymin {

// A3 of the hull after adjoining a movable point. Constant (the base area)
// while v stays inside the base hull.
inline double area_functional(const Configuration& base, const Vec3& v) {
    Configuration all = base;
    all.points.push_back(v);
    return surface_area(convex_hull(all));
}

inline double volume_functional(const Configuration& base, const Vec3& v) {
    Configuration all = base;
    all.points.push_back(v);
    return volume(convex_hull(all));
}

// Level scale used by the probes: twice the hull area. The closed-form cell
// patches of the area surface are naturally written in this scale, where each
// radical term is a full cross-product norm instead of a halved triangle
// area, so reference patch equations can be compared term by term.
inline double patch_area(const Configuration& base, const Vec3& v) {
    return 2.0 * area_functional(base, v);
}

// A base plus a level in the patch-area scale (area probes) or a plain volume
// bound (volume probes).
struct SurfaceProbe {
    Configuration base;
    double level = 0;
};

inline SurfaceProbe area_probe(Configuration base, double level) {
    double floor = 2.0 * surface_area(convex_hull(base));
    if (!(level > floor))
        throw DegenerateInput("area_probe: level must exceed the base patch area " +
                              std::to_string(floor));
    return {std::move(base), level};
}

inline SurfaceProbe volume_probe(Configuration base, double level) {
    double floor = volume(convex_hull(base));
    if (!(level > floor))
        throw DegenerateInput("volume_probe: level must exceed the base volume " +
                              std::to_string(floor));
    return {std::move(base), level};
}

struct SingularPointReport {
    Vec3 candidate{};
    std::array<int, 2> edge{{-1, -1}};  // base point indices; the ray runs
                                        // from points[edge[0]] through
                                        // points[edge[1]] and beyond
    std::vector<Vec3> normals;          // one-sided gradients, one per adjacent cell
    double max_angle = 0;               // max pairwise angle between normals, radians
    double level_residual = 0;          // |patch_area(candidate) - level| / level
};

struct ConvexityReport {
    long trials = 0;
    long violations = 0;
    double min_strict_gap = std::numeric_limits<double>::infinity();
};

struct ContainmentReport {
    long trials = 0;
    long violations = 0;
    double max_volume_excess = -std::numeric_limits<double>::infinity();
};

namespace detail {

// Sign of p against every merged face plane of the base hull; these sign
// vectors index the polyhedral cells of the face-plane arrangement.
inline std::vector<int> cell_signature(const HullMesh& m, const Vec3& p) {
    std::vector<int> sig(m.group_planes.size());
    for (std::size_t g = 0; g < m.group_planes.size(); ++g) {
        double sd = signed_distance(m.group_planes[g], p);
        sig[g] = (sd > 0) - (sd < 0);
    }
    return sig;
}

inline bool inside_hull(const HullMesh& m, const Vec3& p, double tau) {
    for (const Plane& pl : m.group_planes)
        if (signed_distance(pl, p) > tau) return false;
    return true;
}

// First crossing of patch_area == level along the ray origin + t*dir, t > 0.
// The ray starts weakly inside the level set, the functional grows linearly
// far out, and the sublevel set is convex, so the crossing is unique.
// Bisection narrows t to `rel` relative width; returns the low-side estimate.
inline double ray_crossing(const Configuration& base, const HullMesh& m, const Vec3& origin,
                           const Vec3& dir, double level, double rel) {
    double lo = 0.0;
    double hi = std::max(m.scale, 1e-30);
    int guard = 0;
    while (patch_area(base, origin + hi * dir) < level) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 600) throw DegenerateInput("ray_crossing: level not reached");
    }
    while (hi - lo > rel * hi) {
        double mid = 0.5 * (lo + hi);
        if (patch_area(base, origin + mid * dir) < level)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace detail

// One-sided gradient of area_functional at v, approached from the open cell
// containing v + eps*d. Central differences at two interior offsets along d,
// extrapolated linearly back to v; all probe points are kept inside one cell
// so a single smooth patch is sampled.
inline Vec3 one_sided_gradient(const Configuration& base, const Vec3& v, const Vec3& d) {
    HullMesh m = convex_hull(base);
    double dn = norm(d);
    if (!(dn > 0)) throw DegenerateInput("one_sided_gradient: zero direction");
    Vec3 u = d / dn;
    if (detail::inside_hull(m, v, -1e-12 * m.scale))
        throw DegenerateInput("one_sided_gradient: v is inside the base hull");

    double eps = 1e-6 * m.scale;
    for (int attempt = 0; attempt < 40; ++attempt, eps *= 0.5) {
        Vec3 x1 = v + eps * u, x2 = v + 2.0 * eps * u;
        std::vector<int> sig = detail::cell_signature(m, x1);
        if (std::find(sig.begin(), sig.end(), 0) != sig.end()) continue;
        if (detail::cell_signature(m, x2) != sig) continue;

        double delta = 0.125 * eps;
        auto grad_at = [&](const Vec3& x, Vec3& out) {
            Vec3 g{};
            for (int axis = 0; axis < 3; ++axis) {
                Vec3 a = x, b = x;
                a[axis] += delta;
                b[axis] -= delta;
                if (detail::cell_signature(m, a) != sig) return false;
                if (detail::cell_signature(m, b) != sig) return false;
                g[axis] = (area_functional(base, a) - area_functional(base, b)) / (2.0 * delta);
            }
            out = g;
            return true;
        };
        Vec3 g1, g2;
        if (!grad_at(x1, g1) || !grad_at(x2, g2)) continue;
        return 2.0 * g1 - g2;  // linear extrapolation to v kills the O(eps) drift
    }
    throw DegenerateInput("one_sided_gradient: no stable cell along the direction");
}

// Singular-point candidates of the area level set: for each merged hull edge
// and each of its two prolongation rays, the unique point where patch_area
// reaches `level`. At most 2e candidates for e edges. Each report carries the
// one-sided gradients from the cells adjacent to the candidate.
inline std::vector<SingularPointReport> singular_candidates(const Configuration& base,
                                                            double level) {
    HullMesh m = convex_hull(base);
    if (!(level > 2.0 * surface_area(m)))
        throw DegenerateInput("singular_candidates: level must exceed the base patch area");

    std::vector<SingularPointReport> out;
    for (const std::array<int, 2>& e : m.edges) {
        for (int flip = 0; flip < 2; ++flip) {
            int tail = e[flip], head = e[1 - flip];
            Vec3 ptail = m.vertices[tail], phead = m.vertices[head];
            Vec3 dir = phead - ptail;
            double len = norm(dir);
            if (!(len > 0)) continue;
            dir = dir / len;

            SingularPointReport rep;
            rep.edge = {m.source_index[tail], m.source_index[head]};
            double t = detail::ray_crossing(base, m, phead, dir, level, 1e-13);
            rep.candidate = phead + t * dir;
            rep.level_residual = std::fabs(patch_area(base, rep.candidate) - level) / level;

            // Cells around the candidate: sign choices over the planes that
            // pass through it (the two faces flanking the generating edge,
            // more in degenerate positions).
            std::vector<int> through;
            for (std::size_t g = 0; g < m.group_planes.size(); ++g)
                if (std::fabs(signed_distance(m.group_planes[g], rep.candidate)) <=
                    1e-7 * m.scale)
                    through.push_back(static_cast<int>(g));
            if (through.size() <= 4) {
                for (unsigned mask = 0; mask < (1u << through.size()); ++mask) {
                    Vec3 probe_dir{};
                    for (std::size_t k = 0; k < through.size(); ++k) {
                        double s = (mask >> k) & 1 ? 1.0 : -1.0;
                        probe_dir += s * m.group_planes[static_cast<std::size_t>(through[k])].normal;
                    }
                    double pn = norm(probe_dir);
                    if (!(pn > 1e-9)) continue;
                    probe_dir = probe_dir / pn;
                    bool realized = true;
                    for (std::size_t k = 0; k < through.size(); ++k) {
                        double s = (mask >> k) & 1 ? 1.0 : -1.0;
                        if (s * dot(m.group_planes[static_cast<std::size_t>(through[k])].normal,
                                    probe_dir) <= 1e-9)
                            realized = false;
                    }
                    if (!realized) continue;
                    try {
                        rep.normals.push_back(one_sided_gradient(base, rep.candidate, probe_dir));
                    } catch (const DegenerateInput&) {
                    }
                }
            }
            for (std::size_t i = 0; i < rep.normals.size(); ++i)
                for (std::size_t j = i + 1; j < rep.normals.size(); ++j) {
                    double c = dot(rep.normals[i], rep.normals[j]) /
                               (norm(rep.normals[i]) * norm(rep.normals[j]));
                    rep.max_angle = std::max(rep.max_angle, std::acos(std::clamp(c, -1.0, 1.0)));
                }
            out.push_back(std::move(rep));
        }
    }
    return out;
}

// Midpoint convexity sampling of the area functional at a fixed level. Pairs
// are drawn inside the sublevel set by scaling random rays from the centroid;
// the midpoint value must not exceed the average, strictly so when the pair
// is not entirely inside the base hull.
inline ConvexityReport convexity_sample(const Configuration& base, double level, long trials,
                                        Rng& rng) {
    HullMesh m = convex_hull(base);
    if (!(level > 2.0 * surface_area(m)))
        throw DegenerateInput("convexity_sample: level must exceed the base patch area");
    Vec3 c = centroid(base.points);
    double tau = 1e-12 * m.scale;
    double margin = 1e-12 * level;

    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(trials));
    for (auto& s : seeds) s = rng.next_u64();

    std::atomic<long> next{0};
    std::vector<long> violations_per(detail::thread_budget(), 0);
    std::vector<double> gap_per(detail::thread_budget(),
                                std::numeric_limits<double>::infinity());
    auto worker = [&](std::size_t slot) {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= trials) return;
            Rng r(seeds[static_cast<std::size_t>(i)]);
            auto sample = [&]() {
                Vec3 dir = r.unit_vector();
                double t = detail::ray_crossing(base, m, c, dir, level, 1e-9);
                return c + (r.uniform() * t) * dir;
            };
            Vec3 u = sample(), w = sample();
            Vec3 mid = 0.5 * (u + w);
            double fu = patch_area(base, u), fw = patch_area(base, w);
            double fm = patch_area(base, mid);
            double gap = 0.5 * (fu + fw) - fm;
            bool interior_pair = detail::inside_hull(m, u, tau) && detail::inside_hull(m, w, tau);
            bool strict = !interior_pair && !(u == w);
            if (strict) {
                gap_per[slot] = std::min(gap_per[slot], gap);
                if (gap < margin) ++violations_per[slot];
            } else if (gap < -margin) {
                ++violations_per[slot];
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t s = 1; s < detail::thread_budget(); ++s) pool.emplace_back(worker, s);
    worker(0);
    for (auto& th : pool) th.join();

    ConvexityReport rep;
    rep.trials = trials;
    for (long v : violations_per) rep.violations += v;
    for (double g : gap_per) rep.min_strict_gap = std::min(rep.min_strict_gap, g);
    return rep;
}

// Containment of the area sublevel set in the volume sublevel set at the
// levels of a full candidate: drop one vertex, sample the area set
// {x : A3(hull(base + x)) <= A3(full)}, and check V3 <= V3(full) throughout.
// A strict violation would yield a better polyhedron than the candidate.
inline ContainmentReport containment_sample(const Configuration& config, int drop, long trials,
                                            Rng& rng) {
    if (drop < 0 || static_cast<std::size_t>(drop) >= config.size())
        throw DegenerateInput("containment_sample: drop index out of range");
    HullMesh full = convex_hull(config);
    double h = surface_area(full), v0 = volume(full);

    Configuration base;
    for (std::size_t i = 0; i < config.size(); ++i)
        if (static_cast<int>(i) != drop) base.points.push_back(config.points[i]);
    HullMesh m = convex_hull(base);
    if (!(h > surface_area(m)))
        throw DegenerateInput("containment_sample: dropped point adds no area");

    Vec3 c = centroid(base.points);
    ContainmentReport rep;
    rep.trials = trials;
    for (long i = 0; i < trials; ++i) {
        Rng r(rng.next_u64());
        Vec3 dir = r.unit_vector();
        // patch scale carries the factor two
        double t = detail::ray_crossing(base, m, c, dir, 2.0 * h, 1e-9);
        Vec3 u = c + (r.uniform() * t) * dir;
        double excess = volume_functional(base, u) / v0 - 1.0;
        rep.max_volume_excess = std::max(rep.max_volume_excess, excess);
        if (excess > 1e-9) ++rep.violations;
    }
    return rep;
}

// Single-vertex rigidity: perturb one vertex inside a ball, descend over that
// vertex alone, and require every trial to land back on the original position
// without ever finding a lower quality.
inline bool rigidity_probe(const Configuration& config, int vertex, double radius, long trials,
                           Rng& rng) {
    if (vertex < 0 || static_cast<std::size_t>(vertex) >= config.size())
        throw DegenerateInput("rigidity_probe: vertex index out of range");
    HullMesh m0 = convex_hull(config);
    double q0 = quality(m0);
    double diam = m0.scale;
    Vec3 p0 = config.points[static_cast<std::size_t>(vertex)];

    for (long i = 0; i < trials; ++i) {
        Configuration c = config;
        c.points[static_cast<std::size_t>(vertex)] = p0 + rng.ball_point(radius);
        Configuration done = polish_vertex(c, vertex, 1e-12);
        double q1 = quality(convex_hull(done));
        if (q1 < q0 - 1e-10) return false;
        if (norm(done.points[static_cast<std::size_t>(vertex)] - p0) > 1e-6 * diam) return false;
    }
    return true;
}

// All-vertex variant modulo gauge: perturb every vertex, re-polish the whole
// configuration, and compare in the canonical frame. A weaker notion than
// full deformation rigidity with three vertices pinned; reported separately
// from the single-vertex probe.
inline bool rigidity_probe_gauge(const Configuration& config, double radius, long trials,
                                 Rng& rng) {
    Configuration ref = canonical_gauge(config);
    double q0 = quality(convex_hull(ref));
    double diam = diameter(ref.points).value;

    for (long i = 0; i < trials; ++i) {
        Configuration c = config;
        for (Vec3& p : c.points) p += rng.ball_point(radius);
        Configuration done = canonical_gauge(polish(c, 1e-12));
        double q1 = quality(convex_hull(done));
        if (q1 < q0 - 1e-10) return false;
        for (std::size_t k = 0; k < ref.size(); ++k)
            if (norm(done.points[k] - ref.points[k]) > 1e-6 * diam) return false;
    }
    return true;
}

}  // namespace polymin
