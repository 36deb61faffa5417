#pragma once

// Derivative-free minimizers: Brent's method in 1-D and Powell's direction-set
// method in low dimensions. The objectives here are smooth closed-form or
// mesh-evaluated quality functions; +inf is used to fence off invalid domains.

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace polymin {

struct LineResult {
    double x = 0;
    double f = 0;
    int evals = 0;
};

// Brent minimization on [a,b]. Assumes f is unimodal-ish there; tolerance is
// on x. Standard golden-section with parabolic interpolation.
template <class F>
LineResult brent_minimize(F&& f, double a, double b, double tol, int max_iter = 200) {
    const double gold = 0.3819660112501051;
    double x = a + gold * (b - a), w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0, e = 0;
    int evals = 1;
    for (int it = 0; it < max_iter; ++it) {
        double m = 0.5 * (a + b);
        double t = tol * std::fabs(x) + 1e-300;
        if (std::fabs(x - m) <= 2 * t - 0.5 * (b - a)) break;
        double p = 0, q = 0, r = 0;
        bool parabolic = false;
        if (std::fabs(e) > t) {
            r = (x - w) * (fx - fv);
            q = (x - v) * (fx - fw);
            p = (x - v) * q - (x - w) * r;
            q = 2 * (q - r);
            if (q > 0) p = -p;
            q = std::fabs(q);
            double e_old = e;
            e = d;
            if (std::fabs(p) < std::fabs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                double u = x + d;
                if (u - a < 2 * t || b - u < 2 * t) d = (x < m) ? t : -t;
                parabolic = true;
            }
        }
        if (!parabolic) {
            e = (x < m) ? b - x : a - x;
            d = gold * e;
        }
        double u = (std::fabs(d) >= t) ? x + d : x + (d > 0 ? t : -t);
        double fu = f(u);
        ++evals;
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return {x, fx, evals};
}

// Vertex of the parabola through (x-d, x, x+d); x itself when the second
// difference is not positive (no local curvature to exploit).
template <class F>
double parabola_vertex(F&& f, double x, double d) {
    double fm = f(x - d), f0 = f(x), fp = f(x + d);
    double den = fp - 2.0 * f0 + fm;
    if (!(den > 0)) return x;
    return x - 0.5 * d * (fp - fm) / den;
}

// Brent followed by Richardson-extrapolated parabola fits at spacings d and
// 2d. Near a smooth minimum this removes the fit's O(d^2) bias and recovers
// the minimizer several digits past the plain noise-limited estimate.
template <class F>
LineResult refine_minimize(F&& f, double a, double b, double tol, double fit_step) {
    LineResult r = brent_minimize(f, a, b, tol);
    double x1 = parabola_vertex(f, r.x, fit_step);
    double x2 = parabola_vertex(f, r.x, 2.0 * fit_step);
    r.x = (4.0 * x1 - x2) / 3.0;
    r.f = f(r.x);
    r.evals += 7;
    return r;
}

namespace detail {

// Expand a bracket (0, step) along a ray until the function turns upward.
template <class F>
void bracket_ray(F&& f, double f0, double step, double* lo, double* hi, int* evals) {
    double a = 0, fa = f0;
    double b = step, fb = f(b);
    ++*evals;
    if (fb > fa) {  // try the other side
        *lo = -step;
        *hi = step;
        return;
    }
    for (int i = 0; i < 60; ++i) {
        double c = b * 2.6180339887498949;
        double fc = f(c);
        ++*evals;
        if (fc > fb) {
            *lo = a;
            *hi = c;
            return;
        }
        a = b; fa = fb;
        b = c; fb = fc;
    }
    *lo = a;
    *hi = b * 2.6180339887498949;
    (void)fa;
}

}  // namespace detail

struct MinimizeResult {
    std::vector<double> x;
    double f = 0;
    int evals = 0;
    int iterations = 0;
};

// Minimize f along x + t*dir; returns the accepted t and updates x in place.
template <class F>
double line_minimize(F&& f, std::vector<double>& x, const std::vector<double>& dir, double step,
                     double xtol, double* fbest, int* evals) {
    auto g = [&](double t) {
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + t * dir[i];
        return f(y);
    };
    double lo, hi;
    detail::bracket_ray(g, *fbest, step, &lo, &hi, evals);
    LineResult r = brent_minimize(g, lo, hi, xtol);
    *evals += r.evals;
    if (r.f < *fbest) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += r.x * dir[i];
        *fbest = r.f;
        return r.x;
    }
    return 0;
}

// Powell's method with direction replacement. ftol is a relative decrease
// threshold per iteration; xtol bounds the line-search resolution.
template <class F>
MinimizeResult powell_minimize(F&& f, std::vector<double> x0, double step0, double ftol,
                               double xtol, int max_iter = 400) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> dirs(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) dirs[i][i] = 1.0;

    MinimizeResult res;
    res.x = std::move(x0);
    res.f = f(res.x);
    res.evals = 1;

    double step = step0;
    for (int it = 0; it < max_iter; ++it) {
        ++res.iterations;
        double f_start = res.f;
        std::vector<double> x_start = res.x;
        double biggest = 0;
        std::size_t ibig = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double before = res.f;
            line_minimize(f, res.x, dirs[i], step, xtol, &res.f, &res.evals);
            if (before - res.f > biggest) {
                biggest = before - res.f;
                ibig = i;
            }
        }
        double decrease = f_start - res.f;
        if (decrease <= ftol * (std::fabs(f_start) + 1e-300)) {
            if (step <= xtol * 4) break;
            step *= 0.25;  // refine before giving up
            continue;
        }
        // replace the dominant direction with the net displacement
        std::vector<double> net(n);
        double len = 0;
        for (std::size_t i = 0; i < n; ++i) {
            net[i] = res.x[i] - x_start[i];
            len += net[i] * net[i];
        }
        len = std::sqrt(len);
        if (len > 0) {
            for (double& c : net) c /= len;
            dirs[ibig] = dirs[n - 1];
            dirs[n - 1] = net;
            line_minimize(f, res.x, dirs[n - 1], step, xtol, &res.f, &res.evals);
        }
    }
    return res;
}

// Central finite-difference gradient with per-component relative step.
template <class F>
std::vector<double> fd_gradient(F&& f, const std::vector<double>& x, double h_rel = 1e-6) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double h = h_rel * std::max(1.0, std::fabs(x[i]));
        std::vector<double> a = x, b = x;
        a[i] += h;
        b[i] -= h;
        g[i] = (f(a) - f(b)) / (2 * h);
    }
    return g;
}

inline double norm2_vec(const std::vector<double>& v) {
    double s = 0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

}  // namespace polymin
