#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "gidlab/laplace_inversion.hpp"

namespace gidlab {

// F(x) = 1 - E_alpha(-x^alpha), the Mittag-Leffler distribution function,
// computed by three mutually-checking kernels:
//   * power series sum z^k / Gamma(1+alpha k)  (small/moderate z = x^alpha),
//   * fixed-Talbot inversion of 1/(s(1+s^alpha))  (mid range),
//   * the divergent tail expansion sum (-1)^{n+1} z^-n / Gamma(1-alpha n)
//     truncated at its smallest term  (large z).
// The series is summed in long double with compensation; it reports an error
// estimate (max term * eps) and the dispatcher only trusts it when that
// estimate is tiny, because the alternating sum cancels catastrophically for
// small alpha at large z.

struct MlSeriesEval {
    double value = 0.0;
    double error_estimate = 0.0;
};

inline constexpr double kMlSeriesTrust = 1e-8;
inline constexpr double kMlSeriesCutoff = 10.0;     // largest z the series attempts
inline constexpr double kMlAsymptoticCutoff = 30.0; // smallest z for the tail expansion

namespace detail {

// E_alpha(-z) by direct summation, 0 < alpha < 1, z >= 0
inline MlSeriesEval ml_e_series(double alpha, double z) {
    long double sum = 0.0L;
    long double comp = 0.0L;  // Kahan compensation
    long double max_term = 0.0L;
    const long double lz = z > 0.0 ? std::log(static_cast<long double>(z)) : 0.0L;
    long double last = 0.0L;
    for (int k = 0; k <= 200; ++k) {
        long double t;
        if (k == 0) {
            t = 1.0L;
        } else if (z == 0.0) {
            break;
        } else {
            t = std::exp(k * lz - std::lgamma(1.0L + alpha * k));
            if ((k & 1) != 0) t = -t;
        }
        const long double at = std::fabs(t);
        if (at > max_term) max_term = at;
        const long double y = t - comp;
        const long double s2 = sum + y;
        comp = (s2 - sum) - y;
        sum = s2;
        last = at;
        if (k > 2 && at < 1e-18L * std::fabs(sum)) break;
    }
    MlSeriesEval out;
    out.value = static_cast<double>(sum);
    const long double eps = 5.42101086242752217e-20L;  // 2^-64, long double ulp scale
    out.error_estimate = static_cast<double>(4.0L * max_term * eps + last);
    return out;
}

// E_alpha(-z) ~ sum_{n>=1} (-1)^{n+1} z^-n / Gamma(1 - alpha n), truncated at
// the smallest term; 1/Gamma at the poles vanishes (reflection formula).
inline double ml_e_asymptotic(double alpha, double z) {
    const double pi = 3.14159265358979323846264338328;
    double sum = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 60; ++n) {
        const double an = alpha * n;
        // 1/Gamma(1-an) = sin(pi(1-an)) Gamma(an) / pi
        const double rg = std::sin(pi * (1.0 - an)) * std::exp(std::lgamma(an)) / pi;
        const double term = ((n & 1) != 0 ? 1.0 : -1.0) * rg * std::pow(z, -n);
        const double at = std::fabs(term);
        if (at > prev) break;  // divergence onset
        sum += term;
        prev = at;
        if (at < 1e-17 * std::max(std::fabs(sum), 1e-8)) break;
    }
    return sum;
}

}  // namespace detail

// complex transform of the ML distribution function: 1/(s(1+s^alpha))
inline ComplexTransform ml_cdf_transform(double alpha) {
    return [alpha](std::complex<double> s) {
        return 1.0 / (s * (1.0 + std::pow(s, alpha)));
    };
}

inline double ml_cdf_series(double alpha, double x) {
    if (alpha == 1.0) return -std::expm1(-x);
    return 1.0 - detail::ml_e_series(alpha, std::pow(x, alpha)).value;
}

inline MlSeriesEval ml_cdf_series_checked(double alpha, double x) {
    MlSeriesEval e = detail::ml_e_series(alpha, std::pow(x, alpha));
    e.value = 1.0 - e.value;
    return e;
}

inline double ml_cdf_talbot(double alpha, double x) {
    return invert_lt_at(ml_cdf_transform(alpha), x);
}

inline double ml_cdf_asymptotic(double alpha, double x) {
    return 1.0 - detail::ml_e_asymptotic(alpha, std::pow(x, alpha));
}

// Mittag-Leffler CDF, 0 < alpha <= 1, x >= 0
inline double ml_cdf(double alpha, double x) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("ml_cdf: need alpha in (0,1]");
    if (x < 0.0)
        throw std::invalid_argument("ml_cdf: need x >= 0");
    if (x == 0.0) return 0.0;
    if (alpha == 1.0) return -std::expm1(-x);

    const double z = std::pow(x, alpha);
    if (z <= kMlSeriesCutoff) {
        const MlSeriesEval e = detail::ml_e_series(alpha, z);
        if (e.error_estimate <= kMlSeriesTrust) return 1.0 - e.value;
    }
    if (z >= kMlAsymptoticCutoff) return 1.0 - detail::ml_e_asymptotic(alpha, z);
    return ml_cdf_talbot(alpha, x);
}

}  // namespace gidlab
