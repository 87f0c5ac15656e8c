#pragma once

#include <cmath>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "fourtwo/errors.hpp"

namespace fourtwo {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
    double upper_cutoff_quantile = 1.0 - 1e-10;

    void validate() const {
        if (abs_tol <= 0.0) throw DomainError("QuadratureSpec: abs_tol must be > 0");
        if (rel_tol <= 0.0) throw DomainError("QuadratureSpec: rel_tol must be > 0");
        if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
        if (upper_cutoff_quantile < 0.999 || upper_cutoff_quantile >= 1.0)
            throw DomainError("QuadratureSpec: upper_cutoff_quantile must lie in [0.999, 1)");
    }
};

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15(F& f, double a, double b, double* result, double* err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    // layout: index 0..6 pairs (c - h*x, c + h*x), index 14 centre
    double resk = 0.0, resg = 0.0;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        fv[2 * j] = f(c - x);
        fv[2 * j + 1] = f(c + x);
        resk += kWgk[j] * (fv[2 * j] + fv[2 * j + 1]);
    }
    fv[14] = f(c);
    resk += kWgk[7] * fv[14];
    // Gauss subset: odd Kronrod indices 1,3,5 and the centre
    resg = kWg[0] * (fv[2] + fv[3]) + kWg[1] * (fv[6] + fv[7]) +
           kWg[2] * (fv[10] + fv[11]) + kWg[3] * fv[14];

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fv[14] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));
    resasc *= std::abs(h);

    *result = resk * h;
    double e = std::abs((resk - resg) * h);
    if (resasc != 0.0 && e != 0.0)
        e = resasc * std::min(1.0, std::pow(200.0 * e / resasc, 1.5));
    *err = e;
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

// Adaptive Gauss-Kronrod on a finite interval. Never throws on
// non-convergence; inspect `converged`.
template <class F>
inline IntegrationResult integrate_adaptive(F&& f, double lo, double hi,
                                            const QuadratureSpec& spec = {}) {
    IntegrationResult out;
    if (lo == hi) {
        out.converged = true;
        return out;
    }
    std::priority_queue<detail::Segment> heap;
    detail::Segment s0{lo, hi, 0.0, 0.0};
    detail::gk15(f, lo, hi, &s0.value, &s0.error);
    heap.push(s0);
    double total = s0.value, total_err = s0.error;
    int splits = 0;

    while (splits < spec.max_subdivisions) {
        if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) break;
        detail::Segment worst = heap.top();
        if (!(worst.error > 0.0) || worst.b - worst.a < 1e-300) break;
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        detail::Segment l{worst.a, mid, 0.0, 0.0}, r{mid, worst.b, 0.0, 0.0};
        detail::gk15(f, l.a, l.b, &l.value, &l.error);
        detail::gk15(f, r.a, r.b, &r.value, &r.error);
        total += l.value + r.value - worst.value;
        total_err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++splits;
    }
    out.value = total;
    out.error = total_err;
    out.subdivisions = splits;
    out.converged = std::isfinite(total) &&
                    total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    return out;
}

// Adaptive integration over [lo, hi] where hi may be +infinity
// (mapped through x = lo + t/(1-t)). Throws ToleranceError when the
// requested tolerance cannot be met, carrying the best estimate.
template <class F>
inline IntegrationResult integrate_1d(F&& f, double lo, double hi,
                                      const QuadratureSpec& spec = {}) {
    spec.validate();
    IntegrationResult res;
    if (std::isinf(hi)) {
        auto g = [&](double t) {
            const double om = 1.0 - t;
            const double x = lo + t / om;
            return f(x) / (om * om);
        };
        res = integrate_adaptive(g, 0.0, 1.0, spec);
    } else {
        res = integrate_adaptive(f, lo, hi, spec);
    }
    if (!res.converged)
        throw ToleranceError("integrate_1d: tolerance not met (best " +
                                 std::to_string(res.value) + ", error " +
                                 std::to_string(res.error) + ")",
                             res.value, res.error);
    return res;
}

}  // namespace fourtwo
