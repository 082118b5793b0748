#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gidlab/rng.hpp"

namespace gidlab {

// asymptotic 1% Kolmogorov-Smirnov constant
inline constexpr double kKs1pcCoefficient = 1.63;

inline double ks_critical_one_sample(std::size_t n) {
    if (n == 0) throw std::invalid_argument("ks_critical_one_sample: empty sample");
    return kKs1pcCoefficient / std::sqrt(static_cast<double>(n));
}

inline double ks_critical_two_sample(std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) throw std::invalid_argument("ks_critical_two_sample: empty sample");
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return kKs1pcCoefficient * std::sqrt((nn + mm) / (nn * mm));
}

// sup_x |F_n(x) - F(x)| against a given CDF
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    double prev_f = -1.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        if (f < prev_f - 1e-12)
            throw std::invalid_argument("ks_statistic: cdf decreasing on the sample range");
        prev_f = f;
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::fabs(static_cast<double>(i) / n - f));
    }
    return d;
}

// two-sample sup-distance between empirical CDFs
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

inline double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median: empty input");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 0) {
        const double lo = *std::max_element(v.begin(), v.begin() + mid);
        return 0.5 * (lo + hi);
    }
    return hi;
}

namespace detail {

inline std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // average rank for ties
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace detail

// Spearman rank correlation of (x_i, x_{i+1}) pairs
inline double spearman_lag1(const std::vector<double>& xs) {
    if (xs.size() < 3) throw std::invalid_argument("spearman_lag1: need at least 3 values");
    std::vector<double> a(xs.begin(), xs.end() - 1);
    std::vector<double> b(xs.begin() + 1, xs.end());
    const auto ra = detail::ranks(a);
    const auto rb = detail::ranks(b);
    return detail::pearson(ra, rb);
}

struct IndependenceReport {
    double lag1_stat = 0.0;
    double p_value = 0.0;
    bool pass = false;
};

// Permutation test of serial (lag-1) dependence: shuffle the sequence, compare
// |rank correlation| of neighbours against the observed value. Rank-based, so
// it stays valid when moments are infinite.
inline IndependenceReport permutation_independence_test(const std::vector<double>& xs,
                                                        RngState& rng, int n_shuffles = 1000,
                                                        double level = 0.01) {
    IndependenceReport rep;
    rep.lag1_stat = spearman_lag1(xs);
    const double observed = std::fabs(rep.lag1_stat);
    std::vector<double> work = xs;
    int at_least = 0;
    for (int t = 0; t < n_shuffles; ++t) {
        for (std::size_t i = work.size() - 1; i > 0; --i) {
            const std::size_t j =
                static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
            std::swap(work[i], work[std::min(j, i)]);
        }
        if (std::fabs(spearman_lag1(work)) >= observed) ++at_least;
    }
    rep.p_value = (1.0 + at_least) / (1.0 + n_shuffles);
    rep.pass = rep.p_value > level;
    return rep;
}

}  // namespace gidlab
