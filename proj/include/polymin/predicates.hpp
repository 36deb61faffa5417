#pragma once

// Orientation predicate with an exact fallback. The double evaluation uses a
// forward error bound on the 3x3 determinant; when the magnitude is below the
// bound the sign is recomputed in rational arithmetic on the original
// coordinates, so the predicate never lies.

#include <gmpxx.h>

#include <cmath>

#include "polymin/geometry.hpp"

namespace polymin {

// orient3d(a,b,c,d) ~ ((b-a) x (c-a)) . (d-a).
// Positive when d lies on the side of plane(a,b,c) pointed to by the
// right-handed normal of the triangle a,b,c.
inline double orient3d_apx(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d,
                           double* bound) {
    double bax = b.x - a.x, bay = b.y - a.y, baz = b.z - a.z;
    double cax = c.x - a.x, cay = c.y - a.y, caz = c.z - a.z;
    double dax = d.x - a.x, day = d.y - a.y, daz = d.z - a.z;

    double det = bax * (cay * daz - caz * day)
               + bay * (caz * dax - cax * daz)
               + baz * (cax * day - cay * dax);

    double perm = std::fabs(bax) * (std::fabs(cay * daz) + std::fabs(caz * day))
                + std::fabs(bay) * (std::fabs(caz * dax) + std::fabs(cax * daz))
                + std::fabs(baz) * (std::fabs(cax * day) + std::fabs(cay * dax));

    // Shewchuk-style constant is ~1.6e-15 * perm; use a wide margin since the
    // exact path is cheap and rarely taken.
    *bound = 1e-14 * perm;
    return det;
}

inline int orient3d_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    // mpq construction from double is exact, and so are all the differences.
    mpq_class ax(a.x), ay(a.y), az(a.z);
    mpq_class bax = mpq_class(b.x) - ax, bay = mpq_class(b.y) - ay, baz = mpq_class(b.z) - az;
    mpq_class cax = mpq_class(c.x) - ax, cay = mpq_class(c.y) - ay, caz = mpq_class(c.z) - az;
    mpq_class dax = mpq_class(d.x) - ax, day = mpq_class(d.y) - ay, daz = mpq_class(d.z) - az;

    mpq_class det = bax * (cay * daz - caz * day)
                  + bay * (caz * dax - cax * daz)
                  + baz * (cax * day - cay * dax);
    return sgn(det);
}

// Exact sign of orient3d: -1, 0, or +1.
inline int orient3d_sign(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    double bound;
    double det = orient3d_apx(a, b, c, d, &bound);
    if (det > bound) return 1;
    if (det < -bound) return -1;
    return orient3d_exact(a, b, c, d);
}

}  // namespace polymin
