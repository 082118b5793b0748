#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gidlab/distributions.hpp"
#include "gidlab/stats.hpp"
#include "gidlab/transform.hpp"

namespace gidlab {

// ---------------------------------------------------------------------------
// Renewal paths.
// ---------------------------------------------------------------------------

struct RenewalPath {
    std::vector<double> event_times;  // strictly increasing, all <= horizon
    double horizon = 0.0;

    // first differences with t0 = 0
    std::vector<double> inter_arrivals() const {
        std::vector<double> out;
        out.reserve(event_times.size());
        double prev = 0.0;
        for (double t : event_times) {
            out.push_back(t - prev);
            prev = t;
        }
        return out;
    }
};

// cumulative sums of i.i.d. inter-arrivals until the horizon is exceeded
inline RenewalPath simulate_renewal(RngState& rng, const DistributionSpec& spec,
                                    double horizon) {
    if (!(horizon > 0.0)) throw std::invalid_argument("simulate_renewal: need horizon > 0");
    if (!spec.has_sampler() || !spec.nonnegative_support())
        throw std::invalid_argument(
            "simulate_renewal: inter-arrival law must sample positive values");
    RenewalPath path;
    path.horizon = horizon;
    double t = 0.0;
    for (;;) {
        const double gap = spec.sample_one(rng);
        if (!(gap > 0.0))
            throw std::domain_error("simulate_renewal: nonpositive inter-arrival sampled");
        t += gap;
        if (t > horizon) break;
        path.event_times.push_back(t);
    }
    return path;
}

// exactly n_events events; horizon set to the last event time
inline RenewalPath simulate_renewal_events(RngState& rng, const DistributionSpec& spec,
                                           std::size_t n_events) {
    if (n_events == 0) throw std::invalid_argument("simulate_renewal_events: need n_events > 0");
    if (!spec.has_sampler() || !spec.nonnegative_support())
        throw std::invalid_argument(
            "simulate_renewal_events: inter-arrival law must sample positive values");
    RenewalPath path;
    path.event_times.reserve(n_events);
    double t = 0.0;
    for (std::size_t i = 0; i < n_events; ++i) {
        const double gap = spec.sample_one(rng);
        if (!(gap > 0.0))
            throw std::domain_error("simulate_renewal_events: nonpositive inter-arrival sampled");
        t += gap;
        path.event_times.push_back(t);
    }
    path.horizon = t;
    return path;
}

// ---------------------------------------------------------------------------
// Grid functions and the Volterra renewal-equation solver.
// ---------------------------------------------------------------------------

class GridFunction {
public:
    GridFunction(double step, std::vector<double> values) : h_(step), values_(std::move(values)) {
        if (!(h_ > 0.0)) throw std::invalid_argument("GridFunction: need step > 0");
        if (values_.empty()) throw std::invalid_argument("GridFunction: empty values");
    }

    static GridFunction from_function(const std::function<double(double)>& f, double step,
                                      double horizon) {
        if (!(step > 0.0 && horizon >= step))
            throw std::invalid_argument("GridFunction: need 0 < step <= horizon");
        const std::size_t n = static_cast<std::size_t>(std::floor(horizon / step + 1e-9)) + 1;
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = f(step * static_cast<double>(i));
        return GridFunction(step, std::move(v));
    }

    double step() const { return h_; }
    double horizon() const { return h_ * static_cast<double>(values_.size() - 1); }
    std::size_t size() const { return values_.size(); }
    double x(std::size_t i) const { return h_ * static_cast<double>(i); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

private:
    double h_;
    std::vector<double> values_;
};

// Forward substitution for Z = z + Z*F on the grid of z:
//   Z_i = z_i + sum_{j=1..i} Z_{i-j} [F(jh) - F((j-1)h)]
// Stieltjes increments are exact; the kernel argument is frozen at the cell's
// right endpoint, which keeps every step explicit. Global error O(h).
inline GridFunction solve_renewal_volterra(const GridFunction& z,
                                           const std::function<double(double)>& cdf) {
    const double h = z.step();
    const std::size_t n = z.size();
    std::vector<double> dF(n, 0.0);
    double prev = cdf(0.0);
    if (std::fabs(prev) > 1e-12)
        throw std::invalid_argument("solve_renewal_volterra: need F(0) = 0");
    for (std::size_t j = 1; j < n; ++j) {
        const double cur = cdf(h * static_cast<double>(j));
        if (cur < prev - 1e-12)
            throw std::invalid_argument("solve_renewal_volterra: F decreasing on the grid");
        dF[j] = cur - prev;
        prev = cur;
    }
    GridFunction Z(h, std::vector<double>(n, 0.0));
    Z[0] = z[0];
    for (std::size_t i = 1; i < n; ++i) {
        double acc = z[i];
        for (std::size_t j = 1; j <= i; ++j) acc += Z[i - j] * dF[j];
        Z[i] = acc;
    }
    return Z;
}

// ---------------------------------------------------------------------------
// Fixed-point iteration for the renewal equation in the transform domain:
// T(phi)(s) = p phi(bs) / (1 - q phi(bs)).
// ---------------------------------------------------------------------------

struct Eq1Iteration {
    TransformFn transform;              // final iterate
    std::vector<double> residual_trace; // sup |phi_{n+1} - phi_n| per iteration
    bool converged = false;
};

// log-spaced grid whose ratio is tuned so that b is an exact integer power of
// it: phi(bs) then lands on grid points and needs no interpolation
inline std::vector<double> make_eq1_grid(double b, double s_min = 1e-3, double s_max = 10.0,
                                         std::size_t n = 256) {
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("make_eq1_grid: need b in (0,1)");
    const double nominal = std::log(s_max / s_min) / static_cast<double>(n - 1);
    const int k = std::max(1, static_cast<int>(std::lround(std::log(1.0 / b) / nominal)));
    const double step = std::log(1.0 / b) / static_cast<double>(k);
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = s_min * std::exp(step * static_cast<double>(i));
    return g;
}

namespace detail {

inline void require_grid_compatible(const std::vector<double>& grid, double b) {
    if (grid.size() < 2) throw std::invalid_argument("eq1 grid: need at least 2 points");
    const double ratio = std::log(grid[1] / grid[0]);
    const double m = std::log(1.0 / b) / ratio;
    if (std::fabs(m - std::lround(m)) > 1e-6)
        throw std::invalid_argument(
            "eq1_fixed_point_iterate: b must be an integer power of the grid ratio");
}

// an increase must exceed grid-discretization wobble before it counts
inline constexpr double kDivergenceSlack = 1.001;

inline bool diverging(const std::vector<double>& trace) {
    const std::size_t n = trace.size();
    if (n < 4) return false;
    for (std::size_t i = n - 3; i < n; ++i)
        if (trace[i] <= trace[i - 1] * kDivergenceSlack) return false;
    return true;
}

}  // namespace detail

inline constexpr double kEq1ConvergenceFloor = 1e-12;

// Iterates T = geometric_compound(scale_argument(., b), p) starting from phi0,
// recording the sup-residual on the grid per iteration. Stops early once the
// residual reaches double-precision convergence; three consecutive genuine
// residual increases raise a divergence error.
inline Eq1Iteration eq1_fixed_point_iterate(const TransformFn& phi0, double p, double b,
                                            const std::vector<double>& grid, int max_iters) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("eq1_fixed_point_iterate: need p in (0,1)");
    if (!(b > 0.0 && b < 1.0))
        throw std::invalid_argument("eq1_fixed_point_iterate: need b in (0,1)");
    if (max_iters < 1) throw std::invalid_argument("eq1_fixed_point_iterate: need iters >= 1");
    detail::require_grid_compatible(grid, b);

    Eq1Iteration out;
    TransformFn cur = phi0;
    std::vector<double> cur_vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) cur_vals[i] = cur(grid[i]);

    for (int it = 0; it < max_iters; ++it) {
        TransformFn next = geometric_compound(scale_argument(cur, b), p);
        double resid = 0.0;
        std::vector<double> next_vals(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            next_vals[i] = next(grid[i]);
            resid = std::max(resid, std::fabs(next_vals[i] - cur_vals[i]));
        }
        out.residual_trace.push_back(resid);
        cur = std::move(next);
        cur_vals = std::move(next_vals);
        if (detail::diverging(out.residual_trace))
            throw std::runtime_error(
                "eq1_fixed_point_iterate: residual increased for 3 consecutive iterations");
        if (resid <= kEq1ConvergenceFloor) {
            out.converged = true;
            break;
        }
    }
    if (!out.converged && !out.residual_trace.empty())
        out.converged = out.residual_trace.back() <= kEq1ConvergenceFloor;
    out.transform = cur;
    return out;
}

// ---------------------------------------------------------------------------
// Distributional check of the fixed-point equation: X =d (b X1 w.p. p,
// X2 + b X1 w.p. q), two-sample KS at the 1% level.
// ---------------------------------------------------------------------------

struct KsReport {
    double ks = 0.0;
    double critical = 0.0;
    bool pass = false;
};

inline KsReport verify_eq1_distributional(RngState& rng, const DistributionSpec& spec, double p,
                                          double b, std::size_t n) {
    if (n < 1000)
        throw std::invalid_argument("verify_eq1_distributional: need n >= 1000 (power too low)");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("verify_eq1_distributional: need p in (0,1)");
    if (!(b > 0.0 && b < 1.0))
        throw std::invalid_argument("verify_eq1_distributional: need b in (0,1)");
    if (!spec.has_sampler())
        throw std::invalid_argument("verify_eq1_distributional: family has no sampler");

    std::vector<double> x = spec.sample(rng, n);
    std::vector<double> y(n);
    for (auto& v : y) {
        const double x1 = spec.sample_one(rng);
        if (rng.bernoulli(p)) {
            v = b * x1;
        } else {
            v = spec.sample_one(rng) + b * x1;
        }
    }
    KsReport rep;
    rep.ks = ks_two_sample(x, y);
    rep.critical = ks_critical_two_sample(n, n);
    rep.pass = rep.ks < rep.critical;
    return rep;
}

}  // namespace gidlab
