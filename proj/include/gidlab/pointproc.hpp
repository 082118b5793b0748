#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gidlab/mittag_leffler.hpp"
#include "gidlab/renewal.hpp"
#include "gidlab/stats.hpp"

namespace gidlab {

// Event times with {1,2} indicator marks recording each point's origin.
struct MarkedPath {
    std::vector<double> event_times;  // strictly increasing, no multiplicities
    std::vector<int> marks;           // 1 or 2, same length
    double horizon = 0.0;
};

// independently mark each event 1 with probability p, else 2
inline MarkedPath thin(const RenewalPath& path, double p, RngState& rng) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("thin: need p in (0,1]");
    MarkedPath out;
    out.event_times = path.event_times;
    out.horizon = path.horizon;
    out.marks.reserve(path.event_times.size());
    for (std::size_t i = 0; i < path.event_times.size(); ++i)
        out.marks.push_back(rng.bernoulli(p) ? 1 : 2);
    return out;
}

// merge two paths, marking each event by origin; equal times are an error
// (the superposition model assumes no multiplicities)
inline MarkedPath superpose(const RenewalPath& a, const RenewalPath& b) {
    MarkedPath out;
    out.horizon = std::max(a.horizon, b.horizon);
    out.event_times.reserve(a.event_times.size() + b.event_times.size());
    out.marks.reserve(a.event_times.size() + b.event_times.size());
    std::size_t i = 0, j = 0;
    while (i < a.event_times.size() || j < b.event_times.size()) {
        const bool take_a =
            j >= b.event_times.size() ||
            (i < a.event_times.size() && a.event_times[i] < b.event_times[j]);
        if (i < a.event_times.size() && j < b.event_times.size() &&
            a.event_times[i] == b.event_times[j])
            throw std::domain_error("superpose: multiplicity (equal event times)");
        if (take_a) {
            out.event_times.push_back(a.event_times[i++]);
            out.marks.push_back(1);
        } else {
            out.event_times.push_back(b.event_times[j++]);
            out.marks.push_back(2);
        }
    }
    return out;
}

// the sub-path carrying the requested mark
inline RenewalPath project(const MarkedPath& marked, int which) {
    if (which != 1 && which != 2) throw std::invalid_argument("project: mark must be 1 or 2");
    RenewalPath out;
    out.horizon = marked.horizon;
    for (std::size_t i = 0; i < marked.event_times.size(); ++i)
        if (marked.marks[i] == which) out.event_times.push_back(marked.event_times[i]);
    return out;
}

// first differences of the selected event times (with t0 = 0)
inline std::vector<double> thinned_interarrival_samples(const MarkedPath& marked, int which) {
    const RenewalPath sub = project(marked, which);
    if (sub.event_times.size() < 2)
        throw std::invalid_argument(
            "thinned_interarrival_samples: fewer than 2 events with the requested mark");
    return sub.inter_arrivals();
}

// ---------------------------------------------------------------------------
// Statistical checks behind the thinning theorems.
// ---------------------------------------------------------------------------

// Thinned Mittag-Leffler renewal stays Mittag-Leffler up to the scale
// p^{-1/alpha}: rescale each projection's inter-arrivals and KS-test them
// against the alpha CDF at the 1% level.
struct Thm31Report {
    double ks_n1 = 0.0;
    double ks_n2 = 0.0;
    double critical_n1 = 0.0;
    double critical_n2 = 0.0;
    bool pass = false;
};

inline Thm31Report check_thm31(RngState& rng, double alpha, double p, std::size_t n_events) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("check_thm31: alpha in (0,1]");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("check_thm31: p in (0,1)");
    const auto spec = DistributionSpec::mittag_leffler(alpha);
    const RenewalPath path = simulate_renewal_events(rng, spec, n_events);
    const MarkedPath marked = thin(path, p, rng);

    auto rescaled = [alpha](std::vector<double> v, double keep) {
        const double c = std::pow(keep, 1.0 / alpha);
        for (auto& x : v) x *= c;
        return v;
    };
    const auto gaps1 = rescaled(thinned_interarrival_samples(marked, 1), p);
    const auto gaps2 = rescaled(thinned_interarrival_samples(marked, 2), 1.0 - p);
    auto cdf = [alpha](double x) { return x <= 0.0 ? 0.0 : ml_cdf(alpha, x); };

    Thm31Report rep;
    rep.ks_n1 = ks_statistic(gaps1, cdf);
    rep.ks_n2 = ks_statistic(gaps2, cdf);
    rep.critical_n1 = ks_critical_one_sample(gaps1.size());
    rep.critical_n2 = ks_critical_one_sample(gaps2.size());
    rep.pass = rep.ks_n1 < rep.critical_n1 && rep.ks_n2 < rep.critical_n2;
    return rep;
}

// "Same type" = equal up to a positive scale. The scale is estimated as the
// ratio of medians (heavy tails may have no mean), then a two-sample KS runs
// on the rescaled data at the 1% level.
struct SameTypeReport {
    double scale_estimate = 0.0;
    double ks_after_rescale = 0.0;
    double critical = 0.0;
    bool pass = false;
};

inline SameTypeReport check_same_type(const std::vector<double>& samples1,
                                      const std::vector<double>& samples2) {
    if (samples1.empty() || samples2.empty())
        throw std::invalid_argument("check_same_type: empty sample");
    const double m1 = median(samples1);
    const double m2 = median(samples2);
    if (m1 == 0.0 || m2 == 0.0) throw std::invalid_argument("check_same_type: zero median");

    SameTypeReport rep;
    rep.scale_estimate = m2 / m1;
    std::vector<double> rescaled = samples2;
    for (auto& x : rescaled) x /= rep.scale_estimate;
    rep.ks_after_rescale = ks_two_sample(samples1, rescaled);
    rep.critical = ks_critical_two_sample(samples1.size(), samples2.size());
    rep.pass = rep.ks_after_rescale < rep.critical;
    return rep;
}

// Forward direction of the renewal-w.r.t.-indicator theorem: thinned
// GID-renewal inter-arrivals must look i.i.d. Lag-1 rank correlation with a
// permutation p-value; pass iff p > 0.01.
inline IndependenceReport check_renewal_independence(const std::vector<double>& samples,
                                                     RngState& rng) {
    if (samples.size() < 100)
        throw std::invalid_argument(
            "check_renewal_independence: need at least 100 consecutive inter-arrivals");
    return permutation_independence_test(samples, rng);
}

}  // namespace gidlab
