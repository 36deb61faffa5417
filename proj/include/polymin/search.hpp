#pragma once
// Randomized global search: sample on the sphere, filter by valency variance,
// descend with valency-preserving local moves interleaved with diameter
// squeezes, then polish the survivor with a derivative-free sweep.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "polymin/geometry.hpp"
#include "polymin/hull.hpp"
#include "polymin/metrics.hpp"
#include "polymin/rng.hpp"

namespace polymin {

struct SearchParams {
    int n = 4;
    int restarts = 12;
    int iterations = 2500;        // local-step proposals per restart
    std::uint64_t seed = 1;
    double variance_max = 0.5;    // valency-variance filter on fresh samples
    int variance_retries = 200;   // resamples before settling for the best seen
    double squeeze = 0.98;        // diameter contraction factor
    int local_per_squeeze = 50;   // local steps between squeeze attempts
    double step_initial = 0.1;    // relative to the configuration diameter
    double step_final = 1e-7;
    double polish_tol = 1e-9;     // quality-improvement cutoff per polish sweep
};

struct TracePoint {
    int iteration = 0;
    double quality = 0;
};

struct RestartSummary {
    int index = 0;
    double quality = 0;
    int accepted = 0;
    int rejected = 0;
    bool valid = false;  // hull kept n vertices and all faces are triangles
};

struct SearchResult {
    Configuration best;
    double quality = 0;
    ValencyVector valency;
    std::vector<TracePoint> trace;  // winning restart, accepted moves only
    std::vector<RestartSummary> restarts;
    std::uint64_t seed = 0;
    double wall_seconds = 0;
};

// Thrown when no restart produced a usable n-vertex result; carries the best
// attempt so the caller can inspect what went wrong.
struct BudgetExhausted : std::runtime_error {
    SearchResult partial;
    explicit BudgetExhausted(SearchResult p)
        : std::runtime_error("search budget exhausted without a valid result"),
          partial(std::move(p)) {}
};

enum class MoveScope { Vertex, Edge, Face };

inline Configuration random_configuration(int n, Rng& rng) {
    if (n < 4) throw DegenerateInput("need at least 4 points");
    for (int attempt = 0; attempt < 64; ++attempt) {
        Configuration c;
        c.points.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) c.points.push_back(rng.unit_vector());
        try {
            if (convex_hull(c).vertices.size() == static_cast<std::size_t>(n)) return c;
        } catch (const DegenerateInput&) {
        }
    }
    throw DegenerateInput("could not sample a non-degenerate configuration");
}

inline double valency_variance(const ValencyVector& v) {
    if (v.empty()) return 0.0;
    double mean = 0;
    for (int d : v) mean += d;
    mean /= static_cast<double>(v.size());
    double var = 0;
    for (int d : v) var += (d - mean) * (d - mean);
    return var / static_cast<double>(v.size());
}

namespace detail {

struct Evaluated {
    HullMesh mesh;
    double quality = 0;
};

inline Evaluated evaluate(const Configuration& c) {
    Evaluated e;
    e.mesh = convex_hull(c);
    e.quality = quality(e.mesh);
    return e;
}

// Vertices (as configuration indices) touched by a move of the given scope.
inline std::vector<int> scope_targets(const HullMesh& m, MoveScope scope, Rng& rng) {
    std::vector<int> targets;
    switch (scope) {
        case MoveScope::Vertex:
            targets.push_back(m.source_index[rng.index(m.vertices.size())]);
            break;
        case MoveScope::Edge: {
            const auto& e = m.edges[rng.index(m.edges.size())];
            targets.push_back(m.source_index[e[0]]);
            targets.push_back(m.source_index[e[1]]);
            break;
        }
        case MoveScope::Face: {
            int g = static_cast<int>(rng.index(m.coplanar_groups.size()));
            for (int v : merged_face_loop(m, g)) targets.push_back(m.source_index[v]);
            break;
        }
    }
    return targets;
}

}  // namespace detail

// One descent proposal. Returns the moved configuration if it lowers Q while
// keeping every point on the hull and the valency vector unchanged; nullopt
// (rejection) is a normal outcome.
inline std::optional<Configuration> local_step(const Configuration& config, MoveScope scope,
                                               Rng& rng, double step) {
    detail::Evaluated cur = detail::evaluate(config);
    ValencyVector val0 = valency_vector(cur.mesh);
    std::vector<int> targets = detail::scope_targets(cur.mesh, scope, rng);

    Configuration cand = config;
    for (int t : targets) cand.points[t] += step * cur.mesh.scale * rng.unit_vector();

    try {
        detail::Evaluated next = detail::evaluate(cand);
        if (next.mesh.vertices.size() != config.size()) return std::nullopt;
        if (valency_vector(next.mesh) != val0) return std::nullopt;
        if (!(next.quality < cur.quality)) return std::nullopt;
    } catch (const DegenerateInput&) {
        return std::nullopt;
    }
    return cand;
}

// Contract by `factor` along the current diameter direction, keeping the
// orthogonal plane through the diameter midpoint fixed. The squeezed
// configuration is kept only when it lowers Q without losing a vertex.
inline Configuration diameter_squeeze(const Configuration& config, double factor) {
    if (!(factor > 0.0 && factor <= 1.0)) throw DegenerateInput("squeeze factor out of range");
    DiameterResult d = diameter(config);
    if (d.pair[0] < 0) return config;
    Vec3 dir = config.points[d.pair[0]] - config.points[d.pair[1]];
    double len = norm(dir);
    if (len == 0.0) return config;
    dir = dir / len;
    Vec3 mid = 0.5 * (config.points[d.pair[0]] + config.points[d.pair[1]]);

    Configuration cand = config;
    for (Vec3& p : cand.points) p += (factor - 1.0) * dot(p - mid, dir) * dir;

    try {
        detail::Evaluated before = detail::evaluate(config);
        detail::Evaluated after = detail::evaluate(cand);
        if (after.mesh.vertices.size() != config.size()) return config;
        if (!(after.quality < before.quality)) return config;
    } catch (const DegenerateInput&) {
        return config;
    }
    return cand;
}

// Similarity-canonical form: centroid at the origin, unit hull volume, first
// point on +z, second point in the x >= 0 half of the xz-plane. Q is
// invariant under all of it; polishing in this gauge removes the flat
// similitude directions.
inline Configuration canonical_gauge(Configuration config) {
    Vec3 c = centroid(config.points);
    for (Vec3& p : config.points) p -= c;
    double v = volume(convex_hull(config));
    double s = 1.0 / std::cbrt(v);
    for (Vec3& p : config.points) p = s * p;

    Vec3 a = config.points[0];
    double an = norm(a);
    if (an > 0) {
        a = a / an;
        Vec3 ez{0, 0, 1};
        Vec3 axis = cross(a, ez);
        double sn = norm(axis), cs = dot(a, ez);
        if (sn > 1e-15) {
            axis = axis / sn;
            for (Vec3& p : config.points)  // Rodrigues rotation a -> ez
                p = cs * p + sn * cross(axis, p) + (1 - cs) * dot(axis, p) * axis;
        } else if (cs < 0) {
            for (Vec3& p : config.points) p = {p.x, -p.y, -p.z};
        }
    }
    if (config.size() > 1) {
        const Vec3& b = config.points[1];
        double r = std::hypot(b.x, b.y);
        if (r > 1e-15) {
            double cphi = b.x / r, sphi = b.y / r;
            for (Vec3& p : config.points)
                p = {cphi * p.x + sphi * p.y, -sphi * p.x + cphi * p.y, p.z};
        }
    }
    return config;
}

namespace detail {

// Compass sweep over selected coordinates: try +/- step on each, keep strict
// Q improvements that preserve the vertex count and valency vector. Returns
// the total improvement of the sweep.
inline double compass_sweep(Configuration& c, double& q, const ValencyVector& val0,
                            const std::vector<int>& indices, double step) {
    double gained = 0;
    for (int i : indices) {
        for (int axis = 0; axis < 3; ++axis) {
            for (double sign : {1.0, -1.0}) {
                Configuration cand = c;
                cand.points[i][axis] += sign * step;
                try {
                    Evaluated e = evaluate(cand);
                    if (e.mesh.vertices.size() != c.size()) continue;
                    if (e.quality >= q) continue;
                    if (valency_vector(e.mesh) != val0) continue;
                    gained += q - e.quality;
                    c = std::move(cand);
                    q = e.quality;
                    break;  // skip the opposite sign after an accept
                } catch (const DegenerateInput&) {
                }
            }
        }
    }
    return gained;
}

inline Configuration polish_indices(Configuration c, const std::vector<int>& indices, double tol,
                                    bool regauge) {
    Evaluated e = evaluate(c);
    ValencyVector val0 = valency_vector(e.mesh);
    double q = e.quality;
    double step = 0.05 * e.mesh.scale;
    // Quadratic growth near a minimum: a step floor of ~sqrt(tol) resolves
    // quality to o(tol).
    double floor_step = std::max(1e-12, 0.03 * std::sqrt(tol)) * e.mesh.scale;
    while (true) {
        double gained = compass_sweep(c, q, val0, indices, step);
        if (regauge) {
            Vec3 ctr = centroid(c.points);
            for (Vec3& p : c.points) p -= ctr;  // re-center; Q is unchanged
        }
        if (gained < tol) {
            step *= 0.5;
            if (step < floor_step) break;
        }
    }
    return c;
}

}  // namespace detail

// High-precision finisher: gauge-fix, then compass-descend all 3n coordinates
// until a full sweep gains less than tol and the step floor is reached.
inline Configuration polish(const Configuration& config, double tol) {
    Configuration c = canonical_gauge(config);
    std::vector<int> all(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) all[i] = static_cast<int>(i);
    return detail::polish_indices(std::move(c), all, tol, true);
}

// Single-vertex variant used by the rigidity probe: only the given vertex
// moves, the rest of the configuration is frozen, and no gauge is applied.
inline Configuration polish_vertex(const Configuration& config, int vertex, double tol) {
    return detail::polish_indices(config, {vertex}, tol, false);
}

namespace detail {

struct RestartOutcome {
    Configuration config;
    double quality = 0;
    ValencyVector valency;
    std::vector<TracePoint> trace;
    RestartSummary summary;
};

inline Configuration sample_with_variance_filter(const SearchParams& params, Rng& rng) {
    Configuration best;
    double best_var = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < std::max(1, params.variance_retries); ++attempt) {
        Configuration c = random_configuration(params.n, rng);
        double var = valency_variance(valency_vector(convex_hull(c)));
        if (var <= params.variance_max) return c;
        if (var < best_var) {
            best_var = var;
            best = c;
        }
    }
    return best;
}

inline RestartOutcome run_restart(const SearchParams& params, int index) {
    Rng rng = Rng::substream(params.seed, static_cast<std::uint64_t>(index));
    RestartOutcome out;
    out.summary.index = index;

    Configuration c = sample_with_variance_filter(params, rng);
    double q = evaluate(c).quality;
    out.trace.push_back({0, q});

    double step = params.step_initial;
    for (int it = 1; it <= params.iterations; ++it) {
        std::size_t pick = rng.index(5);
        MoveScope scope = pick < 3   ? MoveScope::Vertex
                          : pick < 4 ? MoveScope::Edge
                                     : MoveScope::Face;
        if (auto moved = local_step(c, scope, rng, step)) {
            c = std::move(*moved);
            q = evaluate(c).quality;
            out.trace.push_back({it, q});
            step = std::min(step * 1.5, params.step_initial);
            ++out.summary.accepted;
        } else {
            step = std::max(step * 0.5, params.step_final);
            ++out.summary.rejected;
        }
        if (params.local_per_squeeze > 0 && it % params.local_per_squeeze == 0) {
            Configuration squeezed = diameter_squeeze(c, params.squeeze);
            double q2 = evaluate(squeezed).quality;
            if (q2 < q) {
                c = std::move(squeezed);
                q = q2;
                out.trace.push_back({it, q});
            }
        }
    }

    c = polish(c, params.polish_tol);
    Evaluated fin = evaluate(c);
    out.config = std::move(c);
    out.quality = fin.quality;
    out.valency = valency_vector(fin.mesh);
    if (out.quality < out.trace.back().quality)
        out.trace.push_back({params.iterations, out.quality});
    out.summary.quality = out.quality;
    out.summary.valid = fin.mesh.vertices.size() == static_cast<std::size_t>(params.n) &&
                        all_faces_triangular(fin.mesh);
    return out;
}

inline int thread_budget() {
    if (const char* env = std::getenv("POLYMIN_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace detail

// Best-of-restarts driver. Restarts are independent (private RNG substream
// per index) and may run on several threads; the reduction is sequential
// over restart indices, so the result does not depend on scheduling.
inline SearchResult search(const SearchParams& params) {
    if (params.n < 4) throw DegenerateInput("need n >= 4");
    if (!(params.squeeze > 0.9 && params.squeeze < 1.0))
        throw DegenerateInput("squeeze factor must lie in (0.9, 1)");
    if (!(params.step_initial > 0) || !(params.step_final > 0))
        throw DegenerateInput("step sizes must be positive");
    auto t0 = std::chrono::steady_clock::now();

    std::vector<detail::RestartOutcome> slots(static_cast<std::size_t>(std::max(0, params.restarts)));
    int workers = std::min<int>(detail::thread_budget(), std::max(1, params.restarts));
    if (workers <= 1 || params.restarts <= 1) {
        for (int r = 0; r < params.restarts; ++r) slots[r] = detail::run_restart(params, r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < params.restarts; r = next.fetch_add(1))
                    slots[r] = detail::run_restart(params, r);
            });
        for (auto& th : pool) th.join();
    }

    SearchResult result;
    result.seed = params.seed;
    int winner = -1;
    for (int r = 0; r < params.restarts; ++r) {
        result.restarts.push_back(slots[r].summary);
        if (!slots[r].summary.valid) continue;
        if (winner < 0 || slots[r].quality < result.quality) {  // ties keep the lowest index
            winner = r;
            result.quality = slots[r].quality;
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    result.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

    if (winner < 0) {
        for (int r = 0; r < params.restarts; ++r)
            if (result.best.size() == 0 || slots[r].quality < result.quality) {
                result.best = slots[r].config;
                result.quality = slots[r].quality;
                result.valency = slots[r].valency;
                result.trace = slots[r].trace;
            }
        throw BudgetExhausted(std::move(result));
    }
    result.best = std::move(slots[winner].config);
    result.valency = std::move(slots[winner].valency);
    result.trace = std::move(slots[winner].trace);
    return result;
}

}  // namespace polymin
