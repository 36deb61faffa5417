#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polymin/functionals.hpp"
#include "polymin/hull.hpp"
#include "polymin/metrics.hpp"
#include "polymin/optimize.hpp"
#include "polymin/rng.hpp"
#include "support.hpp"

using namespace polymin;

TEST_CASE("named constants decrease in n and stay above the ball limit") {
    double prev = 1e9;
    for (const auto& c : named_constants()) {
        if (c.n == 0) continue;
        CHECK(c.value < prev);
        CHECK(c.value > ball_limit());
        prev = c.value;
    }
    CHECK(ball_limit() == Catch::Approx(4.83598).margin(1e-5));
}

TEST_CASE("bipyramid quality closed form") {
    CHECK(bipyramid_quality(3) == Catch::Approx(std::pow(3.0, 5.0 / 3.0)).epsilon(1e-12));
    CHECK(bipyramid_quality(4) ==
          Catch::Approx(std::pow(3.0, 7.0 / 6.0) * std::pow(2.0, 2.0 / 3.0)).epsilon(1e-12));
    CHECK(bipyramid_quality(5) == Catch::Approx(5.53841).margin(1e-5));
    CHECK(bipyramid_quality(5) == Catch::Approx(named_constant("eta7").value).epsilon(1e-12));
    for (int k = 3; k < 12; ++k) CHECK(bipyramid_quality(k + 1) < bipyramid_quality(k));
    CHECK_THROWS(bipyramid_quality(2));
}

TEST_CASE("bipyramid meshes attain the closed-form quality") {
    for (int k : {3, 4, 5, 6, 8}) {
        for (double h : {0.1, 1.0, 10.0}) {
            HullMesh m = convex_hull(bipyramid_mesh(k, h));
            CHECK(m.vertices.size() == static_cast<std::size_t>(k + 2));
            CHECK(quality(m) == Catch::Approx(bipyramid_quality(k)).epsilon(1e-10));
        }
    }
    SECTION("k=4 is the regular octahedron up to similitude") {
        Configuration c = bipyramid_mesh(4, 1.0);
        HullMesh m = convex_hull(c);
        CHECK(valency_vector(m) == ValencyVector(6, 4));
        CHECK(quality(m) == Catch::Approx(named_constant("eta6").value).epsilon(1e-12));
        // the main diagonal is h*sqrt(8)
        CHECK(dist(c.points[4], c.points[5]) == Catch::Approx(std::sqrt(8.0)).epsilon(1e-14));
    }
    SECTION("3-bipyramid valency") {
        HullMesh m = convex_hull(bipyramid_mesh(3, 1.0));
        CHECK(valency_vector(m) == ValencyVector{3, 3, 4, 4, 4});
    }
}

TEST_CASE("optimal apex height over a fixed base is sqrt(2)h") {
    for (double h : {0.7, 1.0, 1.9}) {
        for (int k : {3, 5, 7}) {
            auto q_of = [&](double H) { return quality(convex_hull(bipyramid_with_apex(k, h, H))); };
            LineResult r = refine_minimize(q_of, 0.2 * h, 4.0 * h, 1e-13, 1e-4 * h);
            CHECK_THAT(r.x, Catch::Matchers::WithinAbs(std::sqrt(2.0) * h, 1e-9 * h));
        }
    }
}

TEST_CASE("incenter") {
    SECTION("equilateral triangle gives the centroid") {
        Vec3 A{0, 0, 0}, B{1, 0, 0}, C{0.5, std::sqrt(3.0) / 2.0, 0};
        Vec3 I = incenter(A, B, C);
        Vec3 G = (A + B + C) / 3.0;
        CHECK(dist(I, G) < 1e-14);
    }
    SECTION("right isoceles triangle") {
        Vec3 I = incenter({0, 0, 0}, {1, 0, 0}, {0, 1, 0});
        double c = (2.0 - std::sqrt(2.0)) / 2.0;
        CHECK(I.x == Catch::Approx(c).epsilon(1e-13));
        CHECK(I.y == Catch::Approx(c).epsilon(1e-13));
        CHECK(I.z == Catch::Approx(0.0).margin(1e-15));
    }
    SECTION("incenter is equidistant from the three edges") {
        Rng rng(21);
        for (int t = 0; t < 30; ++t) {
            Vec3 A = rng.ball_point(2), B = rng.ball_point(2), C = rng.ball_point(2);
            if (norm(cross(B - A, C - A)) < 1e-3) continue;
            Vec3 I = incenter(A, B, C);
            auto dist_to_line = [](const Vec3& p, const Vec3& u, const Vec3& v) {
                Vec3 e = normalized(v - u);
                Vec3 r = p - u;
                return norm(r - e * dot(r, e));
            };
            double d0 = dist_to_line(I, A, B);
            double d1 = dist_to_line(I, B, C);
            double d2 = dist_to_line(I, C, A);
            CHECK(d0 == Catch::Approx(d1).epsilon(1e-11));
            CHECK(d1 == Catch::Approx(d2).epsilon(1e-11));
        }
    }
    SECTION("collinear input is rejected") {
        CHECK_THROWS_AS(incenter({0, 0, 0}, {1, 1, 1}, {2, 2, 2}), DegenerateInput);
    }
}

TEST_CASE("incenter residual") {
    std::array<Vec3, 3> base{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
    Vec3 I = incenter(base[0], base[1], base[2]);
    CHECK(incenter_residual(I + Vec3{0, 0, 2.5}, base) < 1e-12);
    CHECK(incenter_residual(base[0] + Vec3{0, 0, 1}, base) > 0.1);
    CHECK_THROWS_AS(incenter_residual({0.25, 0.25, 0}, base), DegenerateInput);

    SECTION("regular tetrahedron apex projects onto the base in-center") {
        Configuration t = support::regular_tetra();
        std::array<Vec3, 3> b{{t.points[1], t.points[2], t.points[3]}};
        CHECK(incenter_residual(t.points[0], b) < 1e-12);
    }
}

TEST_CASE("apex refinement") {
    SECTION("epsilon 0 is degenerate and leaves quality unchanged") {
        HullMesh m = convex_hull(support::regular_tetra());
        auto r = apex_refine(m, 0, 0.0);
        CHECK(r.degenerate);
        CHECK(quality(convex_hull(r.config)) == Catch::Approx(quality(m)).epsilon(1e-13));
    }
    SECTION("small refinement of the regular tetrahedron lowers quality") {
        HullMesh m = convex_hull(support::regular_tetra());
        auto r = apex_refine(m, 0, 0.05);
        CHECK_FALSE(r.degenerate);
        CHECK(quality(convex_hull(r.config)) < named_constant("alpha4").value);
    }
    SECTION("update formulas match a from-scratch hull") {
        auto check_groups = [](const Configuration& base, double eps) {
            HullMesh m = convex_hull(base);
            for (std::size_t g = 0; g < m.coplanar_groups.size(); ++g) {
                auto r = apex_refine(m, static_cast<int>(g), eps);
                HullMesh h = convex_hull(r.config);
                REQUIRE(h.vertices.size() == m.vertices.size() + 1);
                CHECK(volume(h) == Catch::Approx(r.predicted_volume).epsilon(1e-10));
                CHECK(surface_area(h) == Catch::Approx(r.predicted_area).epsilon(1e-10));
            }
        };
        check_groups(support::regular_tetra(), 0.11);
        check_groups(support::octahedron(), 0.07);
        check_groups(support::cube_corners(), 0.25);  // quadrilateral faces, centroid foot
        check_groups(support::random_sphere_config(9, 4242), 0.01);
    }
    SECTION("epsilon beyond the cell bound is rejected") {
        // Octahedron: the opposite slant planes tilt toward the apex ray
        // (normal dot +1/3), so a large epsilon crosses them.
        HullMesh m = convex_hull(support::octahedron());
        CHECK_THROWS_AS(apex_refine(m, 0, 100.0), EpsilonTooLarge);
        // Tetrahedron: every other plane has normal dot -1/3 with the apex
        // ray, so the pyramid cell is unbounded and any epsilon is legal.
        HullMesh t = convex_hull(support::regular_tetra());
        CHECK_NOTHROW(apex_refine(t, 0, 100.0));
    }
    SECTION("volume gain is first order, area gain second order") {
        HullMesh m = convex_hull(support::regular_tetra());
        double V0 = volume(m), A0 = surface_area(m);
        std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5};
        std::vector<double> dv, da;
        for (double e : eps) {
            auto r = apex_refine(m, 2, e);
            HullMesh h = convex_hull(r.config);
            dv.push_back(volume(h) - V0);
            da.push_back(surface_area(h) - A0);
        }
        CHECK(support::loglog_slope(eps, dv) == Catch::Approx(1.0).margin(0.01));
        CHECK(support::loglog_slope(eps, da) == Catch::Approx(2.0).margin(0.02));
    }
}
