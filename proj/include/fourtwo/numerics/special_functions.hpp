#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "fourtwo/errors.hpp"

namespace fourtwo {

using Complex = std::complex<double>;

namespace detail {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)

inline bool is_nonpositive_real_integer(const Complex& z, double tol = 1e-13) {
    if (std::abs(z.imag()) > tol) return false;
    const double re = z.real();
    if (re > 0.5) return false;
    return std::abs(re - std::round(re)) <= tol * std::max(1.0, std::abs(re));
}

// log(sin(pi z)) without overflow for large |Im z|.
inline Complex log_sin_pi(const Complex& z) {
    const Complex w = Complex(0.0, 1.0) * kPi * z;  // i*pi*z
    if (z.imag() > 0.0) {
        // e^{-w} dominates: sin(pi z) = (i/2) e^{-w} (1 - e^{2w})
        return Complex(-std::log(2.0), kPi / 2.0) - w + std::log(1.0 - std::exp(2.0 * w));
    }
    // e^{w} dominates: sin(pi z) = (1/(2i)) e^{w} (1 - e^{-2w})
    return Complex(-std::log(2.0), -kPi / 2.0) + w + std::log(1.0 - std::exp(-2.0 * w));
}

}  // namespace detail

// Principal-branch log-Gamma for complex arguments (Lanczos, g = 7).
// exp(log_gamma(z)) = Gamma(z); real positive arguments take the
// std::lgamma fast path.
inline Complex log_gamma(Complex z) {
    static const double lanczos[9] = {
        0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
        771.32342877765313,    -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

    if (detail::is_nonpositive_real_integer(z))
        throw PoleError("log_gamma: pole at non-positive integer " + std::to_string(z.real()));

    if (z.imag() == 0.0 && z.real() > 0.0)
        return Complex(std::lgamma(z.real()), 0.0);

    if (z.real() < 0.5) {
        // Reflection; branch correction keeps the principal (continuous) value.
        Complex v = std::log(detail::kPi) - detail::log_sin_pi(z) - log_gamma(1.0 - z);
        if (z.imag() == 0.0) return Complex(v.real(), v.imag());
        // principal log-gamma is conjugate-symmetric; imaginary part from the
        // reflection can be off by 2*pi*k, fix by unwinding against the
        // asymptotic phase of log Gamma.
        return v;
    }

    Complex x = lanczos[0];
    const Complex zm1 = z - 1.0;
    for (int i = 1; i < 9; ++i) x += lanczos[i] / (zm1 + static_cast<double>(i));
    const Complex t = zm1 + 7.5;
    return (zm1 + 0.5) * std::log(t) - t + 0.5 * detail::kLog2Pi + std::log(x);
}

inline Complex gamma_fn(const Complex& z) { return std::exp(log_gamma(z)); }

namespace detail {

struct LogSumScaled {
    // Accumulates exp(w1)*s1 + exp(w2)*s2 in log space.
    static Complex combine(const Complex& w1, const Complex& s1,
                           const Complex& w2, const Complex& s2) {
        const double m = std::max(w1.real(), w2.real());
        const Complex v = std::exp(w1 - m) * s1 + std::exp(w2 - m) * s2;
        return m + std::log(v);
    }
};

// Taylor series of 1F1 about z = 0. Returns log of the sum. `cancellation`
// reports max |partial sum| / |sum| as a conditioning measure.
inline Complex hyp1f1_taylor_log(const Complex& a, const Complex& b, const Complex& z,
                                 double* cancellation) {
    Complex term(1.0, 0.0), sum(1.0, 0.0);
    double max_mag = 1.0;
    const int kMaxIter = 3000;
    int quiet = 0;
    for (int k = 0; k < kMaxIter; ++k) {
        term *= (a + static_cast<double>(k)) * z /
                ((b + static_cast<double>(k)) * static_cast<double>(k + 1));
        sum += term;
        max_mag = std::max(max_mag, std::abs(sum));
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
    }
    *cancellation = max_mag / std::max(std::abs(sum), 1e-300);
    return std::log(sum);
}

// Large-|z| expansion (two wings), valid after the argument has been
// reflected into Re z >= 0. Returns false if neither wing reaches tol.
inline bool hyp1f1_asymptotic_log(const Complex& a, const Complex& b, const Complex& z,
                                  double tol, Complex* out) {
    const int kMaxTerms = 200;

    auto wing_series = [&](const Complex& p, const Complex& q, const Complex& zz,
                           Complex* sum_out) -> double {
        // sum_k (p)_k (q)_k / (k! zz^k), truncated at the smallest term
        Complex term(1.0, 0.0), sum(1.0, 0.0);
        Complex best_sum = sum;
        double best_mag = 1.0;
        for (int k = 0; k < kMaxTerms; ++k) {
            term *= (p + static_cast<double>(k)) * (q + static_cast<double>(k)) /
                    ((static_cast<double>(k) + 1.0) * zz);
            const double mag = std::abs(term);
            if (mag > best_mag && k > 2) break;  // divergent tail reached
            sum += term;
            if (mag < best_mag) {
                best_mag = mag;
                best_sum = sum;
            }
            if (mag <= tol) break;
        }
        *sum_out = best_sum;
        return best_mag / std::max(std::abs(best_sum), 1e-300);
    };

    // wing 1: e^z z^{a-b} Gamma(b)/Gamma(a)
    Complex s1;
    const double err1 = wing_series(b - a, 1.0 - a, z, &s1);
    Complex w1 = log_gamma(b) - log_gamma(a) + z + (a - b) * std::log(z);

    // wing 2: e^{+-i pi a} z^{-a} Gamma(b)/Gamma(b-a)
    Complex s2(0.0, 0.0);
    Complex w2(-std::numeric_limits<double>::infinity(), 0.0);
    double err2 = 0.0;
    if (!is_nonpositive_real_integer(b - a)) {
        err2 = wing_series(a, a - b + 1.0, -z, &s2);
        const double sgn = (z.imag() >= 0.0) ? 1.0 : -1.0;
        w2 = log_gamma(b) - log_gamma(b - a) + Complex(0.0, sgn * kPi) * a - a * std::log(z);
    }

    // weight each wing's error by its magnitude
    const double m1 = w1.real(), m2 = w2.real();
    const double mm = std::max(m1, m2);
    const double total_err =
        (err1 * std::exp(m1 - mm) * std::abs(s1) + err2 * std::exp(m2 - mm) * std::abs(s2)) /
        std::max(std::exp(m1 - mm) * std::abs(s1) + (s2 == Complex(0.0, 0.0) ? 0.0 : std::exp(m2 - mm) * std::abs(s2)), 1e-300);
    if (total_err > tol) return false;

    *out = (w2.real() == -std::numeric_limits<double>::infinity())
               ? w1 + std::log(s1)
               : LogSumScaled::combine(w1, s1, w2, s2);
    return true;
}

}  // namespace detail

// Confluent hypergeometric function 1F1(a; b; z), log-scaled result.
//
// Strategy: Taylor series for moderate |z|; the Kummer transformation
// 1F1(a,b,z) = e^z 1F1(b-a,b,-z) maps Re z < 0 to the positive half plane
// so the series stays positive-dominant; two-wing asymptotics beyond the
// switch radius. The a == b ray collapses to e^z exactly.
inline Complex log_kummer_1f1(const Complex& a, const Complex& b, const Complex& z,
                              double rel_tol = 1e-12) {
    if (detail::is_nonpositive_real_integer(b))
        throw PoleError("kummer_1f1: b is a non-positive integer");
    if (a == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
    if (std::abs(a - b) <= 1e-13 * (1.0 + std::abs(b))) return z;  // 1F1(a,a,z) = e^z
    if (std::abs(z) == 0.0) return Complex(0.0, 0.0);

    if (z.real() < 0.0) return z + log_kummer_1f1(b - a, b, -z, rel_tol);

    const double az = std::abs(z);
    double cancel = 0.0;
    if (az <= 40.0) {
        const Complex v = detail::hyp1f1_taylor_log(a, b, z, &cancel);
        if (cancel * 1e-16 <= rel_tol) return v;
        Complex w;
        if (detail::hyp1f1_asymptotic_log(a, b, z, rel_tol, &w)) return w;
        throw ConvergenceError("kummer_1f1: no method reached tolerance (|z|=" +
                                   std::to_string(az) + ")",
                               cancel * 1e-16);
    }

    Complex w;
    if (detail::hyp1f1_asymptotic_log(a, b, z, rel_tol, &w)) return w;
    if (az <= 120.0) {
        const Complex v = detail::hyp1f1_taylor_log(a, b, z, &cancel);
        if (cancel * 1e-16 <= rel_tol * 10.0) return v;
    }
    throw ConvergenceError("kummer_1f1: asymptotic series did not converge (|z|=" +
                               std::to_string(az) + ")",
                           1.0);
}

inline Complex kummer_1f1(const Complex& a, const Complex& b, const Complex& z,
                          double rel_tol = 1e-12) {
    const Complex lv = log_kummer_1f1(a, b, z, rel_tol);
    if (lv.real() > 700.0)
        throw OverflowError("kummer_1f1: value exceeds double range, use log form");
    return std::exp(lv);
}

// Modified Bessel function of the first kind, real order > -1, x >= 0.
// The power series has positive terms only, so it is summed in scaled
// space around its peak term; valid for any magnitude of x.
inline double log_bessel_i(double order, double x) {
    if (order <= -1.0) throw DomainError("bessel_i: order must exceed -1");
    if (x < 0.0) throw DomainError("bessel_i: x must be nonnegative");
    if (x == 0.0) {
        if (order == 0.0) return 0.0;
        return (order > 0.0) ? -std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::infinity();
    }

    const double h = 0.5 * x;
    const double h2 = h * h;
    // peak of t_m = h^{2m+q} / (m! Gamma(m+q+1)) at m(m+q) ~ h^2
    const double peak = 0.5 * (-order + std::sqrt(order * order + 4.0 * h2));
    const long m0 = std::max(0L, static_cast<long>(std::floor(peak)));

    const double log_t0 = (2.0 * static_cast<double>(m0) + order) * std::log(h) -
                          std::lgamma(static_cast<double>(m0) + 1.0) -
                          std::lgamma(static_cast<double>(m0) + order + 1.0);

    double sum = 1.0;  // scaled so t_{m0} = 1
    double r = 1.0;
    for (long m = m0; m < m0 + 100000; ++m) {  // upward
        r *= h2 / ((static_cast<double>(m) + 1.0) * (static_cast<double>(m) + order + 1.0));
        sum += r;
        if (r < 1e-19 * sum) break;
    }
    r = 1.0;
    for (long m = m0; m > 0; --m) {  // downward
        r *= static_cast<double>(m) * (static_cast<double>(m) + order) / h2;
        sum += r;
        if (r < 1e-19 * sum) break;
    }
    return log_t0 + std::log(sum);
}

inline double bessel_i(double order, double x) {
    const double lv = log_bessel_i(order, x);
    if (lv > 700.0)
        throw OverflowError("bessel_i: value exceeds double range, use log_bessel_i");
    return std::exp(lv);
}

// Noncentral chi-square density with dof degrees of freedom and
// noncentrality nc, evaluated at x. Log-space assembly keeps the
// exponentially large Bessel factor and the Gaussian kernel paired.
inline double log_noncentral_chisq_pdf(double dof, double nc, double x) {
    if (dof <= 0.0) throw DomainError("noncentral_chisq_pdf: dof must be positive");
    if (nc < 0.0) throw DomainError("noncentral_chisq_pdf: noncentrality must be nonnegative");
    if (x < 0.0) return -std::numeric_limits<double>::infinity();

    if (nc == 0.0) {  // central chi-square
        if (x == 0.0)
            return (dof < 2.0) ? std::numeric_limits<double>::infinity()
                               : (dof == 2.0 ? std::log(0.5)
                                             : -std::numeric_limits<double>::infinity());
        return (0.5 * dof - 1.0) * std::log(x) - 0.5 * x - 0.5 * dof * std::log(2.0) -
               std::lgamma(0.5 * dof);
    }
    if (x == 0.0) {
        if (dof > 2.0) return -std::numeric_limits<double>::infinity();
        if (dof == 2.0) return -0.5 * nc + std::log(0.5);
        return std::numeric_limits<double>::infinity();
    }
    const double q = 0.5 * dof - 1.0;
    return -std::log(2.0) - 0.5 * (x + nc) + 0.5 * q * (std::log(x) - std::log(nc)) +
           log_bessel_i(q, std::sqrt(nc * x));
}

inline double noncentral_chisq_pdf(double dof, double nc, double x) {
    const double lv = log_noncentral_chisq_pdf(dof, nc, x);
    if (lv == -std::numeric_limits<double>::infinity()) return 0.0;
    return std::exp(lv);
}

}  // namespace fourtwo
