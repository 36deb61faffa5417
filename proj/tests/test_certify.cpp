#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "polymin/certify.hpp"

using namespace polymin;

namespace {

IntPolynomial poly(std::string id, std::vector<long> coeffs) {
    IntPolynomial p{std::move(id), {}};
    for (long c : coeffs) p.coeffs.emplace_back(c);
    return p;
}

bool valid_certificate(const RootCertificate& c, double tol) {
    return c.lower < c.upper && c.sign_lower * c.sign_upper < 0 && c.width <= tol;
}

}  // namespace

TEST_CASE("sign_at: exact rational evaluation", "[certify]") {
    IntPolynomial p = poly("t2m2", {-2, 0, 1});  // t^2 - 2
    CHECK(sign_at(p, mpq_class(3, 2)) == 1);     // 9/4 - 2 = 1/4
    CHECK(sign_at(p, mpq_class(7, 5)) == -1);    // 49/25 - 2 = -1/25
    CHECK(sign_at(p, mpq_class(0)) == -1);
    CHECK(sign_at(p, mpq_class(-3, 2)) == 1);

    IntPolynomial cube = poly("t3", {0, 0, 0, 1});
    CHECK(sign_at(cube, mpq_class(-1, 3)) == -1);
    CHECK(sign_at(cube, mpq_class(0)) == 0);

    // A point where doubles would round: (10^20 + 1)/10^20 vs root of t - 1 - 1e-30.
    IntPolynomial tiny = poly("near_one", {-1, 1});  // t - 1
    mpq_class just_above(mpz_class("100000000000000000001"), mpz_class("100000000000000000000"));
    CHECK(sign_at(tiny, just_above) == 1);
    CHECK(sign_at(tiny, mpq_class(1)) == 0);
}

TEST_CASE("minimal polynomial registry", "[certify]") {
    const auto& all = minimal_polynomials();
    REQUIRE(all.size() == 10);
    for (const auto& p : all) {
        CHECK(p.coeffs.back() != 0);
        CHECK(p.degree() <= 13);
    }
    CHECK(polynomial_by_id("n8_w").degree() == 12);
    CHECK(polynomial_by_id("n8_x2").degree() == 12);
    CHECK(polynomial_by_id("n8_z2").degree() == 12);
    CHECK(polynomial_by_id("n8_q6").degree() == 12);
    CHECK(polynomial_by_id("n9_b2").degree() == 13);
    CHECK(polynomial_by_id("n9_h2").degree() == 13);
    CHECK(polynomial_by_id("n9_q6").degree() == 13);
    CHECK(polynomial_by_id("n10_h2").degree() == 6);
    CHECK(polynomial_by_id("n10_z2").degree() == 6);
    CHECK(polynomial_by_id("n10_q6").degree() == 6);
    CHECK_THROWS_AS(polynomial_by_id("n12_q6"), std::out_of_range);
}

TEST_CASE("registry matches the shipped coefficient files", "[certify]") {
    namespace fs = std::filesystem;
    fs::path dir = fs::path(POLYMIN_DATA_DIR) / "polynomials";
    for (const auto& p : minimal_polynomials()) {
        fs::path file = dir / (p.id + ".txt");
        INFO(file.string());
        REQUIRE(fs::exists(file));
        std::ifstream in(file);
        std::vector<mpz_class> coeffs;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) coeffs.emplace_back(line, 10);
        REQUIRE(coeffs.size() == p.coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) CHECK(coeffs[i] == p.coeffs[i]);
    }
}

TEST_CASE("verify_minpoly: brackets a known irrational root", "[certify]") {
    IntPolynomial p = poly("t2m2", {-2, 0, 1});
    RootCertificate c = verify_minpoly(p, 1.41421356, 1e-6);
    CHECK(valid_certificate(c, 1e-6));
    double root = std::sqrt(2.0);
    CHECK(c.lower.get_d() <= root);
    CHECK(c.upper.get_d() >= root);
    CHECK(c.sign_lower == -1);
    CHECK(c.sign_upper == 1);
}

TEST_CASE("verify_minpoly: exact rational root at a bisection midpoint", "[certify]") {
    IntPolynomial p = poly("half", {-1, 2});  // 2t - 1
    RootCertificate c = verify_minpoly(p, 0.5, 1e-3);
    CHECK(valid_certificate(c, 1e-3));
    CHECK(c.lower.get_d() < 0.5);
    CHECK(c.upper.get_d() > 0.5);
}

TEST_CASE("verify_minpoly: failure modes", "[certify]") {
    SECTION("constant polynomial never changes sign") {
        CHECK_THROWS_AS(verify_minpoly(poly("five", {5}), 1.0, 1e-2), NoSignChange);
    }
    SECTION("value far from every root") {
        IntPolynomial p = poly("t2m2", {-2, 0, 1});
        CHECK_THROWS_AS(verify_minpoly(p, 3.0, 1e-3), NoSignChange);
    }
    SECTION("even-order root has no sign change") {
        IntPolynomial p = poly("sq", {1, -2, 1});  // (t-1)^2
        CHECK_THROWS_AS(verify_minpoly(p, 1.0, 1e-3), NoSignChange);
    }
    SECTION("nonpositive tolerance is rejected") {
        IntPolynomial p = poly("t2m2", {-2, 0, 1});
        CHECK_THROWS_AS(verify_minpoly(p, 1.414, 0.0), DegenerateInput);
    }
}

TEST_CASE("verify_minpoly: reference parameter polynomials", "[certify]") {
    SECTION("degree-12 polynomial in w near 2.0428") {
        RootCertificate c = verify_minpoly(polynomial_by_id("n8_w"), 2.0428, 1e-3);
        CHECK(valid_certificate(c, 1e-3));
    }
    SECTION("degree-6 polynomial in h^2 near 0.541397^2") {
        double h = 0.541397;
        RootCertificate c = verify_minpoly(polynomial_by_id("n10_h2"), h * h, 1e-4);
        CHECK(valid_certificate(c, 1e-4));
    }
}

TEST_CASE("certify_eta: reference quality polynomials", "[certify]") {
    // Reference approximations of the minima for n = 8, 9, 10.
    const double eta[3] = {5.42118, 5.31637, 5.2533};
    for (int n : {8, 9, 10}) {
        RootCertificate c = certify_eta(n);
        INFO("n = " << n);
        CHECK(c.polynomial == "n" + std::to_string(n) + "_q6");
        CHECK(c.sign_lower * c.sign_upper < 0);
        double mid = (c.lower.get_d() + c.upper.get_d()) / 2;
        CHECK(c.width <= 1e-6 * mid * 1.01);
        CHECK(std::pow(mid, 1.0 / 6.0) == Catch::Approx(eta[n - 8]).margin(1e-4));
    }
    CHECK_THROWS_AS(certify_eta(7), DegenerateInput);
    CHECK_THROWS_AS(certify_eta(11), DegenerateInput);
}

TEST_CASE("certified chains for the n = 8, 9, 10 families", "[certify]") {
    SECTION("n = 8: w, x^2, z^2 and Q^6") {
        FamilyOptimum best = optimize_family(family_by_name("n8"));
        REQUIRE(best.params.size() == 3);
        double w = best.params[0], x = best.params[1], z = best.params[2];
        CHECK(valid_certificate(verify_minpoly(polynomial_by_id("n8_w"), w, 1e-3), 1e-3));
        CHECK(valid_certificate(verify_minpoly(polynomial_by_id("n8_x2"), x * x, 1e-3), 1e-3));
        CHECK(valid_certificate(verify_minpoly(polynomial_by_id("n8_z2"), z * z, 1e-3), 1e-3));
        CHECK(valid_certificate(
            verify_minpoly(polynomial_by_id("n8_q6"), std::pow(best.quality, 6), 1e-2), 1e-2));
    }
    SECTION("n = 9: b^2, h^2") {
        FamilyOptimum best = optimize_family(family_by_name("n9"));
        REQUIRE(best.params.size() == 2);
        double b = best.params[0], h = best.params[1];
        CHECK(valid_certificate(verify_minpoly(polynomial_by_id("n9_b2"), b * b, 1e-3), 1e-3));
        CHECK(valid_certificate(verify_minpoly(polynomial_by_id("n9_h2"), h * h, 1e-3), 1e-3));
    }
    SECTION("n = 10: h^2, z^2") {
        FamilyOptimum best = optimize_family(family_by_name("n10"));
        REQUIRE(best.params.size() == 2);
        double h = best.params[0], z = best.params[1];
        CHECK(valid_certificate(verify_minpoly(polynomial_by_id("n10_h2"), h * h, 1e-3), 1e-3));
        CHECK(valid_certificate(verify_minpoly(polynomial_by_id("n10_z2"), z * z, 1e-3), 1e-3));
    }
}
