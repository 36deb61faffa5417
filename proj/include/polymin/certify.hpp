#pragma once

// Exact root certification for the reference minimal polynomials. A
// certificate is a rational interval on which an integer polynomial changes
// sign; endpoint signs are computed in exact big-integer arithmetic, so a
// certificate is a proof that a root lies inside the interval.

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polymin/families.hpp"
#include "polymin/geometry.hpp"

namespace polymin {

// Dense integer polynomial, coefficients in ascending degree order.
struct IntPolynomial {
    std::string id;
    std::vector<mpz_class> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Rational interval [lower, upper] with a strict sign change of `polynomial`
// at the endpoints.
struct RootCertificate {
    std::string polynomial;
    mpq_class lower;
    mpq_class upper;
    int sign_lower = 0;
    int sign_upper = 0;
    double width = 0.0;
};

namespace detail {

inline IntPolynomial make_polynomial(std::string id, const std::vector<const char*>& text) {
    IntPolynomial p{std::move(id), {}};
    p.coeffs.reserve(text.size());
    for (const char* c : text) p.coeffs.emplace_back(c, 10);
    if (p.coeffs.empty() || p.coeffs.back() == 0)
        throw DegenerateInput(p.id + ": leading coefficient must be nonzero");
    if (p.degree() > 13) throw DegenerateInput(p.id + ": degree above 13");
    return p;
}

}  // namespace detail

// Sign of P(x) for rational x = p/q, evaluated exactly. Horner on the
// numerator of q^deg * P(p/q), so no rounding ever occurs.
inline int sign_at(const IntPolynomial& poly, const mpq_class& x) {
    if (poly.coeffs.empty()) throw DegenerateInput("sign_at: empty polynomial");
    const mpz_class p = x.get_num();
    const mpz_class q = x.get_den();
    mpz_class acc = poly.coeffs.back();
    mpz_class qpow = 1;
    for (int i = poly.degree() - 1; i >= 0; --i) {
        qpow *= q;
        acc = acc * p + poly.coeffs[static_cast<std::size_t>(i)] * qpow;
    }
    return sgn(acc);
}

// Reference minimal polynomials: parameters and Q^6 = A3^6/V3^4 for the
// n = 8, 9, 10 candidate families.
inline const std::vector<IntPolynomial>& minimal_polynomials() {
    static const std::vector<IntPolynomial> table = [] {
        std::vector<IntPolynomial> v;
        v.push_back(detail::make_polynomial(
            "n8_w", {"8", "-40", "-32", "268", "-14", "378", "-916", "874", "-265", "-314",
                     "374", "-150", "21"}));
        v.push_back(detail::make_polynomial(
            "n8_x2",
            {"-1500625", "246891400", "-6498924184", "197676252320", "-549916476544",
             "9593743607488", "-37068998078592", "43451585720832", "6412940883200",
             "-47369088623616", "34505601388544", "-10887830962176", "1413638553600"}));
        v.push_back(detail::make_polynomial(
            "n8_z2",
            {"-881721", "14088624", "-507815656", "22228266304", "-345876361600",
             "2163078191936", "-5229062814592", "2885777661952", "604100406528",
             "284044459008", "-1111813844992", "65086242816", "157070950400"}));
        v.push_back(detail::make_polynomial(
            "n8_q6",
            {"846253032058341803633618097683156083357246027504784634537836544",
             "-145765911302088136407360046924472940590350227969907327078760448",
             "44739094836549297939345827315732094525400511681413644681216",
             "-5444218664651134627342263572192722894788633799480098816",
             "381929202246269536064619254896305729053865712762224",
             "-23215968331655851588483378342178431615039134384",
             "908544689594387775769635417411363042641304",
             "-26376155703404842068063899980163109720",
             "639590587552165626186327476412759",
             "-9114814042610279966292752064",
             "144758783681628174471168",
             "-130494391161126912",
             "4980736000"}));
        v.push_back(detail::make_polynomial(
            "n9_b2", {"-3600", "-9384", "157415", "1871849", "-3005515", "-3048555",
                      "7100157", "-716904", "-5370867", "3887865", "-810945", "-53622",
                      "17415", "2187"}));
        v.push_back(detail::make_polynomial(
            "n9_h2",
            {"-27", "-216", "-5688", "99268", "2629424", "-11859776", "-198587904",
             "641098752", "2269974528", "3790651392", "-43985534976", "74140876800",
             "-37371248640", "5435817984"}));
        v.push_back(detail::make_polynomial(
            "n9_q6",
            {"-8741200275671730192755167246352564248392781977833773782269952",
             "5692272790315788765597663433429575175625193067065671949484032",
             "1663401637275489431763071207791450034909825698981382756499456",
             "205636897183575223972130099822721877708248944269405343514624",
             "-29496333327693613396843751515776856015704029599701614592",
             "-58714195329202332973530206007453465620049796957569024",
             "-13596161545396297014562622838466932898374596846592",
             "-847586880386300377059351613641377507384112384",
             "-58377287904203791631778906263194550638656",
             "3993703760487214498878732921512576256",
             "-12610065164386918027558684269276",
             "4281392126518694452576397473",
             "-20704119330241635606528",
             "21761395104153600"}));
        v.push_back(detail::make_polynomial(
            "n10_h2", {"1", "48", "144", "-16128", "-31296", "273408", "28672"}));
        v.push_back(detail::make_polynomial(
            "n10_z2", {"47089", "1130960", "-1729392", "2846464", "-1889856", "-277504",
                       "28672"}));
        v.push_back(detail::make_polynomial(
            "n10_q6",
            {"-9592639401335565227088041861971968", "362253880325110957404812476416",
             "-4924615865029090098020352", "462296427139672731648", "-713296009601244",
             "274678452", "1"}));
        return v;
    }();
    return table;
}

inline const IntPolynomial& polynomial_by_id(const std::string& id) {
    for (const auto& p : minimal_polynomials())
        if (p.id == id) return p;
    throw std::out_of_range("unknown polynomial: " + id);
}

// Certify that `poly` has a root within `tol` of `value`: a rational interval
// of width at most tol with a strict endpoint sign change. Endpoints are
// evaluated exactly, so the certificate does not depend on rounding.
inline RootCertificate verify_minpoly(const IntPolynomial& poly, double value, double tol) {
    if (!(tol > 0)) throw DegenerateInput("verify_minpoly: tolerance must be positive");
    if (poly.coeffs.empty() || poly.coeffs.back() == 0)
        throw DegenerateInput(poly.id + ": leading coefficient must be nonzero");

    const mpq_class t(tol);
    mpq_class lo = mpq_class(value) - t;
    mpq_class hi = mpq_class(value) + t;
    int slo = sign_at(poly, lo);
    int shi = sign_at(poly, hi);

    if (slo * shi >= 0) {
        // Same sign at the window edges; scan a fixed grid for an interior
        // strict change (covers roots close to one edge).
        bool found = false;
        const int grid = 32;
        const mpq_class step = (hi - lo) / grid;
        mpq_class a = lo;
        int sa = slo;
        for (int i = 1; i <= grid && !found; ++i) {
            mpq_class b = (i == grid) ? hi : mpq_class(lo + step * i);
            int sb = sign_at(poly, b);
            if (sa * sb < 0) {
                lo = a;
                hi = b;
                slo = sa;
                shi = sb;
                found = true;
            }
            a = b;
            sa = sb;
        }
        if (!found)
            throw NoSignChange(poly.id + ": no sign change within " + std::to_string(tol) +
                               " of " + std::to_string(value));
    }

    while (mpq_class(hi - lo) > t) {
        mpq_class mid = (lo + hi) / 2;
        int sm = sign_at(poly, mid);
        if (sm == 0) {
            // Exact rational root at the midpoint; a simple root changes sign
            // across any small enough interval around it.
            mpq_class d = (hi - lo) / 8;
            mpq_class a = mid - d, b = mid + d;
            int sa = sign_at(poly, a), sb = sign_at(poly, b);
            if (sa * sb < 0) {
                lo = a;
                hi = b;
                slo = sa;
                shi = sb;
                continue;
            }
            throw NoSignChange(poly.id + ": even-order root at the midpoint");
        }
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }

    RootCertificate cert;
    cert.polynomial = poly.id;
    cert.lower = lo;
    cert.upper = hi;
    cert.sign_lower = slo;
    cert.sign_upper = shi;
    cert.width = mpq_class(hi - lo).get_d();
    return cert;
}

// Optimize the n-vertex family and certify Q^6 against the reference minimal
// polynomial. Q^6 = A3^6/V3^4 is scale invariant, so no normalization is
// needed before comparing with the certified quantity.
inline RootCertificate certify_eta(int n, double rel_tol = 1e-6) {
    if (n != 8 && n != 9 && n != 10)
        throw DegenerateInput("certify_eta: reference polynomials exist for n = 8, 9, 10");
    FamilyOptimum best = optimize_family(family_for_n(n));
    double q6 = std::pow(best.quality, 6);
    return verify_minpoly(polynomial_by_id("n" + std::to_string(n) + "_q6"), q6,
                          rel_tol * q6);
}

}  // namespace polymin
