#pragma once

// Named example configurations, addressable as builtin:<name> from the CLI,
// so reproducible runs need no external mesh files. The nK entries are the
// optimized family candidates and are computed on first use.

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "polymin/families.hpp"
#include "polymin/functionals.hpp"

namespace polymin {

inline const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {
        "tetra",       "cube", "octahedron", "bipyramid3", "bipyramid4",
        "bipyramid5",  "icosahedron", "example-singular",
        "n4", "n5", "n6", "n7", "n8", "n9", "n10", "n11", "n12"};
    return names;
}

// Returns the configuration for a registry name; throws std::out_of_range
// for unknown names. Results are cached, so repeated lookups are cheap.
inline Configuration builtin(const std::string& name) {
    static std::map<std::string, Configuration> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto hit = cache.find(name);
    if (hit != cache.end()) return hit->second;

    Configuration c;
    if (name == "tetra") {
        c = {{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}, "tetra"};
    } else if (name == "cube") {
        for (int sx : {-1, 1})
            for (int sy : {-1, 1})
                for (int sz : {-1, 1})
                    c.points.push_back({double(sx), double(sy), double(sz)});
        c.label = "cube";
    } else if (name == "octahedron") {
        c = {{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}},
             "octahedron"};
    } else if (name == "bipyramid3" || name == "bipyramid4" || name == "bipyramid5") {
        c = bipyramid_mesh(name.back() - '0', 1.0);
    } else if (name == "icosahedron") {
        double p = (1.0 + std::sqrt(5.0)) / 2.0;
        for (int s1 : {-1, 1})
            for (int s2 : {-1, 1}) {
                double a = s1, b = s2 * p;
                c.points.push_back({0, a, b});
                c.points.push_back({a, b, 0});
                c.points.push_back({b, 0, a});
            }
        c.label = "icosahedron";
    } else if (name == "example-singular") {
        c = {{{0, 1, 0}, {0, 0, 0}, {1, 0, 0}, {0, 0, 1}}, "example-singular"};
    } else if (name.size() >= 2 && name[0] == 'n') {
        int n = 0;
        for (std::size_t i = 1; i < name.size(); ++i) {
            if (name[i] < '0' || name[i] > '9') throw std::out_of_range("unknown builtin: " + name);
            n = 10 * n + (name[i] - '0');
        }
        const ShapeFamily& fam = family_for_n(n);
        c = instantiate(fam, optimize_family(fam).params);
        c.label = name;
    } else {
        throw std::out_of_range("unknown builtin: " + name);
    }
    cache.emplace(name, c);
    return c;
}

}  // namespace polymin
