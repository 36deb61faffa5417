#pragma once
// Parametric candidate families for n = 4..12: coordinate generators,
// closed-form functionals where they exist (n = 8, 9, 10), and local
// optimization started from the reference parameter values.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polymin/functionals.hpp"
#include "polymin/geometry.hpp"
#include "polymin/hull.hpp"
#include "polymin/metrics.hpp"
#include "polymin/optimize.hpp"

namespace polymin {

struct ShapeFamily {
    std::string name;
    int n = 0;
    std::vector<std::string> param_names;
    std::vector<double> reference_params;  // known approximate optimum
    std::function<Configuration(const std::vector<double>&)> generate;
    // closed forms; unset when only the mesh path exists
    std::function<double(const std::vector<double>&)> area;
    std::function<double(const std::vector<double>&)> volume;
};

namespace detail {

inline void check_param_count(const ShapeFamily& fam, const std::vector<double>& params) {
    if (params.size() != fam.reference_params.size())
        throw DegenerateInput(fam.name + ": expected " +
                              std::to_string(fam.reference_params.size()) + " parameters");
}

inline Configuration generate_n8(const std::vector<double>& p) {
    double w = p[0], x = p[1], z = p[2];
    return {{{z, 0, w},
             {z, 0, -w},
             {x, 1, 0},
             {x, -1, 0},
             {-z, w, 0},
             {-z, -w, 0},
             {-x, 0, 1},
             {-x, 0, -1}},
            "n8"};
}

inline double area_n8(const std::vector<double>& p) {
    double w = p[0], x = p[1], z = p[2];
    double u = std::sqrt(w * w + (x - z) * (x - z));
    double v = std::sqrt((w - 1) * (w - 1) * w * w + w * w * (x + z) * (x + z) +
                         (w * (x - z) + 2 * z) * (w * (x - z) + 2 * z));
    return 4 * u + 4 * v;
}

inline double volume_n8(const std::vector<double>& p) {
    double w = p[0], x = p[1], z = p[2];
    return 4 * w * (x + w * x + z) / 3.0;
}

// Regular triangular prism (edge 1, height b) with a 4-pyramid of height h
// on each rectangular side face, apex over the face centroid.
inline Configuration generate_n9(const std::vector<double>& p) {
    double b = p[0], h = p[1];
    const double R = 1.0 / std::sqrt(3.0);   // triangle circumradius
    const double r = 0.5 / std::sqrt(3.0);   // triangle apothem
    Configuration c;
    c.label = "n9";
    const double vx[3] = {0.0, -0.5, 0.5};
    const double vy[3] = {R, -R / 2, -R / 2};
    for (int i = 0; i < 3; ++i) {
        c.points.push_back({vx[i], vy[i], b / 2});
        c.points.push_back({vx[i], vy[i], -b / 2});
    }
    const double ax[3] = {0.0, std::sqrt(3.0) / 2, -std::sqrt(3.0) / 2};
    const double ay[3] = {-1.0, 0.5, 0.5};
    for (int i = 0; i < 3; ++i) c.points.push_back({(r + h) * ax[i], (r + h) * ay[i], 0});
    return c;
}

inline double area_n9(const std::vector<double>& p) {
    double b = p[0], h = p[1];
    return std::sqrt(3.0) / 2 + 3 * b * std::sqrt(h * h + 0.25) +
           3 * std::sqrt(h * h + b * b / 4);
}

inline double volume_n9(const std::vector<double>& p) {
    double b = p[0], h = p[1];
    return b * std::sqrt(3.0) / 4 + b * h;
}

// Square antiprism (circumradius 1, half-height h) capped by two pyramids
// with apexes at (0,0,+-z).
inline Configuration generate_n10(const std::vector<double>& p) {
    double h = p[0], z = p[1];
    const double s = 1.0 / std::sqrt(2.0);
    Configuration c;
    c.label = "n10";
    c.points = {{1, 0, -h},  {-1, 0, -h}, {0, 1, -h},  {0, -1, -h}, {s, s, h},
                {s, -s, h},  {-s, s, h},  {-s, -s, h}, {0, 0, z},   {0, 0, -z}};
    return c;
}

inline double area_n10(const std::vector<double>& p) {
    double h = p[0], z = p[1];
    return 4 * (std::sqrt(3 - 2 * std::sqrt(2.0) + 8 * h * h) +
                std::sqrt(1 + 2 * h * h - 4 * h * z + 2 * z * z));
}

inline double volume_n10(const std::vector<double>& p) {
    double h = p[0], z = p[1];
    return (h + std::sqrt(2.0) * h + z) * 4.0 / 3.0;
}

inline Configuration generate_n11(const std::vector<double>& p) {
    double x1 = p[0], x2 = p[1], x3 = p[2], x4 = p[3], x5 = p[4];
    double y = p[5], z1 = p[6], z2 = p[7], z3 = p[8];
    Configuration c;
    c.label = "n11";
    c.points = {{x1, 1, 0},     {x1, -1, 0},   {x2, 0, z1},    {x2, 0, -z1},
                {-x3, 0, z2},   {-x3, 0, -z2}, {-x4, y, z3},   {-x4, y, -z3},
                {-x4, -y, z3},  {-x4, -y, -z3}, {-x5, 0, 0}};
    return c;
}

}  // namespace detail

inline const std::vector<ShapeFamily>& families() {
    static const std::vector<ShapeFamily> table = [] {
        std::vector<ShapeFamily> t;

        ShapeFamily tetra;
        tetra.name = "tetrahedron";
        tetra.n = 4;
        tetra.generate = [](const std::vector<double>&) {
            return Configuration{{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}},
                                 "tetrahedron"};
        };
        t.push_back(std::move(tetra));

        // k-bipyramids over a base of apothem 1, apex height as the single
        // parameter; the reference value sqrt(2) is the optimal height.
        for (int k : {3, 4, 5}) {
            ShapeFamily f;
            f.name = "bipyramid" + std::to_string(k);
            f.n = k + 2;
            f.param_names = {"H"};
            f.reference_params = {std::sqrt(2.0)};
            f.generate = [k](const std::vector<double>& p) {
                Configuration c = bipyramid_with_apex(k, 1.0, p[0]);
                c.label = "bipyramid" + std::to_string(k);
                return c;
            };
            t.push_back(std::move(f));
        }

        ShapeFamily n8;
        n8.name = "n8";
        n8.n = 8;
        n8.param_names = {"w", "x", "z"};
        n8.reference_params = {2.0428, 1.53525, 0.476614};
        n8.generate = detail::generate_n8;
        n8.area = detail::area_n8;
        n8.volume = detail::volume_n8;
        t.push_back(std::move(n8));

        ShapeFamily n9;
        n9.name = "n9";
        n9.n = 9;
        n9.param_names = {"b", "h"};
        n9.reference_params = {1.04725, 0.413823};
        n9.generate = detail::generate_n9;
        n9.area = detail::area_n9;
        n9.volume = detail::volume_n9;
        t.push_back(std::move(n9));

        ShapeFamily n10;
        n10.name = "n10";
        n10.n = 10;
        n10.param_names = {"h", "z"};
        n10.reference_params = {0.541397, 1.02619};
        n10.generate = detail::generate_n10;
        n10.area = detail::area_n10;
        n10.volume = detail::volume_n10;
        t.push_back(std::move(n10));

        ShapeFamily n11;
        n11.name = "n11";
        n11.n = 11;
        n11.param_names = {"x1", "x2", "x3", "x4", "x5", "y", "z1", "z2", "z3"};
        n11.reference_params = {1.15135, 0.617047, 0.91681, 0.550702, 1.98113,
                                1.38959, 1.4264,   1.34059, 0.845054};
        n11.generate = detail::generate_n11;
        t.push_back(std::move(n11));

        ShapeFamily icosa;
        icosa.name = "icosahedron";
        icosa.n = 12;
        icosa.generate = [](const std::vector<double>&) {
            const double g = (1.0 + std::sqrt(5.0)) / 2.0;
            Configuration c;
            c.label = "icosahedron";
            for (double s1 : {1.0, -1.0})
                for (double s2 : {1.0, -1.0}) {
                    c.points.push_back({0, s1, s2 * g});
                    c.points.push_back({s1, s2 * g, 0});
                    c.points.push_back({s1 * g, 0, s2});
                }
            return c;
        };
        t.push_back(std::move(icosa));

        return t;
    }();
    return table;
}

inline const ShapeFamily& family_by_name(const std::string& name) {
    for (const auto& f : families())
        if (f.name == name) return f;
    throw std::out_of_range("unknown family: " + name);
}

// The candidate family for a given vertex count.
inline const ShapeFamily& family_for_n(int n) {
    for (const auto& f : families())
        if (f.n == n) return f;
    throw std::out_of_range("no family for n=" + std::to_string(n));
}

// Generate coordinates after checking the parameters stay in the family's
// domain: positive and within a factor 2 of the reference values.
inline Configuration instantiate(const ShapeFamily& fam, const std::vector<double>& params) {
    detail::check_param_count(fam, params);
    for (std::size_t i = 0; i < params.size(); ++i) {
        double ref = fam.reference_params[i];
        if (!(params[i] > 0) || params[i] > 2 * ref || params[i] < ref / 2)
            throw DegenerateInput(fam.name + ": parameter " + fam.param_names[i] +
                                  " out of domain");
    }
    return fam.generate(params);
}

// Closed-form quality when the family has formulas, mesh-based otherwise.
inline double family_quality(const ShapeFamily& fam, const std::vector<double>& params) {
    detail::check_param_count(fam, params);
    if (fam.area && fam.volume) {
        double a = fam.area(params), v = fam.volume(params);
        return a / std::cbrt(v * v);
    }
    return quality(convex_hull(instantiate(fam, params)));
}

struct FamilyOptimum {
    std::vector<double> params;
    double quality = 0;
    double gradient_norm = 0;
    int evaluations = 0;
};

// Local minimization of family_quality from the reference parameters.
inline FamilyOptimum optimize_family(const ShapeFamily& fam, double tol = 1e-6) {
    FamilyOptimum out;
    if (fam.reference_params.empty()) {
        out.params = {};
        out.quality = family_quality(fam, {});
        return out;
    }
    auto objective = [&](const std::vector<double>& p) {
        try {
            if (!(fam.area && fam.volume)) {
                for (std::size_t i = 0; i < p.size(); ++i)
                    if (!(p[i] > 0)) return 1e6;
            }
            return family_quality(fam, p);
        } catch (const DegenerateInput&) {
            return 1e6;
        }
    };
    MinimizeResult r = powell_minimize(objective, fam.reference_params, 0.02, 1e-14, 1e-12);
    out.params = r.x;
    out.quality = r.f;
    out.evaluations = r.evals;
    out.gradient_norm = norm2_vec(fd_gradient(objective, r.x));
    if (out.gradient_norm > tol)
        throw DegenerateInput(fam.name + ": optimizer stalled, |grad| = " +
                              std::to_string(out.gradient_norm));
    return out;
}

}  // namespace polymin
