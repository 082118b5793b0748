#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gidlab/mittag_leffler.hpp"
#include "gidlab/rng.hpp"
#include "gidlab/stats.hpp"
#include "gidlab/transform.hpp"

namespace gidlab {

namespace detail {

inline constexpr double kPi = 3.14159265358979323846264338328;

// Kanter's representation of the one-sided stable law with LT e^{-s^alpha}:
//   S = (a(U)/E)^{(1-alpha)/alpha},
//   a(u) = sin((1-alpha) pi u) sin(alpha pi u)^{alpha/(1-alpha)} / sin(pi u)^{1/(1-alpha)}
inline double kanter_stable(RngState& rng, double alpha) {
    const double u = rng.uniform();
    const double e = rng.exponential();
    const double a = std::sin((1.0 - alpha) * kPi * u) *
                     std::pow(std::sin(alpha * kPi * u), alpha / (1.0 - alpha)) /
                     std::pow(std::sin(kPi * u), 1.0 / (1.0 - alpha));
    return std::pow(a / e, (1.0 - alpha) / alpha);
}

// point mass at 1 when alpha == 1 (the degenerate stable limit)
inline double stable_or_one(RngState& rng, double alpha) {
    return alpha == 1.0 ? 1.0 : kanter_stable(rng, alpha);
}

// Marsaglia-Tsang gamma(shape, 1); shape < 1 boosted through gamma(shape+1)
inline double gamma_sample(RngState& rng, double shape) {
    if (shape < 1.0) {
        const double u = rng.uniform();
        return gamma_sample(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

// geometric on {1,2,...} with P(N=k) = p q^{k-1}
inline std::uint64_t geometric_from_one(RngState& rng, double p) {
    if (p >= 1.0) return 1;
    const double lq = std::log1p(-p);
    return 1 + static_cast<std::uint64_t>(std::floor(std::log(rng.uniform()) / lq));
}

}  // namespace detail

// i.i.d. draws with LT e^{-s^alpha}, 0 < alpha < 1 (Kanter's representation)
inline double sample_positive_stable_one(RngState& rng, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("sample_positive_stable: need alpha in (0,1)");
    return detail::kanter_stable(rng, alpha);
}

inline std::vector<double> sample_positive_stable(RngState& rng, double alpha, std::size_t n) {
    std::vector<double> out(n);
    for (auto& v : out) v = sample_positive_stable_one(rng, alpha);
    return out;
}

// ---------------------------------------------------------------------------
// DistributionSpec: tagged family with sampler and closed-form transform.
// ---------------------------------------------------------------------------

enum class Family {
    exponential,
    gamma_exponent,
    positive_stable,
    mittag_leffler,
    linnik,
    two_param_ml,
    semi_ml_candidate,
};

class DistributionSpec {
public:
    static DistributionSpec exponential(double rate) {
        if (!(rate > 0.0)) throw std::invalid_argument("exponential: need rate > 0");
        return DistributionSpec(Family::exponential, rate, 0.0, 1.0);
    }
    // LT (1+s)^{-alpha}: the gamma(alpha, 1) law
    static DistributionSpec gamma_exponent(double alpha) {
        if (!(alpha > 0.0)) throw std::invalid_argument("gamma_exponent: need alpha > 0");
        return DistributionSpec(Family::gamma_exponent, alpha, 0.0, 1.0);
    }
    static DistributionSpec positive_stable(double alpha) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("positive_stable: need alpha in (0,1)");
        return DistributionSpec(Family::positive_stable, alpha, 0.0, 1.0);
    }
    static DistributionSpec mittag_leffler(double alpha, double scale = 1.0) {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::invalid_argument("mittag_leffler: need alpha in (0,1]");
        if (!(scale > 0.0)) throw std::invalid_argument("mittag_leffler: need scale > 0");
        return DistributionSpec(Family::mittag_leffler, alpha, 0.0, scale);
    }
    static DistributionSpec linnik(double alpha, double scale = 1.0) {
        if (!(alpha > 0.0 && alpha <= 2.0))
            throw std::invalid_argument("linnik: need alpha in (0,2]");
        if (!(scale > 0.0)) throw std::invalid_argument("linnik: need scale > 0");
        return DistributionSpec(Family::linnik, alpha, 0.0, scale);
    }
    // LT (1+s^alpha)^{-beta}
    static DistributionSpec two_param_ml(double alpha, double beta) {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::invalid_argument("two_param_ml: need alpha in (0,1]");
        if (!(beta > 0.0)) throw std::invalid_argument("two_param_ml: need beta > 0");
        return DistributionSpec(Family::two_param_ml, alpha, beta, 1.0);
    }
    // participates through its exponent/transform only; no exact sampler known
    static DistributionSpec semi_ml_candidate(double alpha, double eps, double b) {
        DistributionSpec d(Family::semi_ml_candidate, alpha, eps, 1.0);
        d.b_ = b;
        (void)psi_log_periodic(alpha, eps, b);  // parameter validation
        return d;
    }

    Family family() const { return family_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double scale() const { return scale_; }

    bool has_sampler() const { return family_ != Family::semi_ml_candidate; }
    bool nonnegative_support() const { return family_ != Family::linnik; }

    std::string name() const {
        switch (family_) {
            case Family::exponential: return "exponential";
            case Family::gamma_exponent: return "gamma_exponent";
            case Family::positive_stable: return "positive_stable";
            case Family::mittag_leffler: return "mittag_leffler";
            case Family::linnik: return "linnik";
            case Family::two_param_ml: return "two_param_ml";
            case Family::semi_ml_candidate: return "semi_ml_candidate";
        }
        return "?";
    }

    double sample_one(RngState& rng) const {
        switch (family_) {
            case Family::exponential:
                return rng.exponential() / alpha_;  // alpha_ holds the rate
            case Family::gamma_exponent:
                return detail::gamma_sample(rng, alpha_);
            case Family::positive_stable:
                return detail::kanter_stable(rng, alpha_);
            case Family::mittag_leffler: {
                const double e = rng.exponential();
                return scale_ * std::pow(e, 1.0 / alpha_) * detail::stable_or_one(rng, alpha_);
            }
            case Family::linnik: {
                const double e = rng.exponential();
                const double z = alpha_ == 2.0
                                     ? std::sqrt(2.0) * rng.normal()
                                     : std::sqrt(2.0 * detail::kanter_stable(rng, alpha_ / 2.0)) *
                                           rng.normal();
                return scale_ * std::pow(e, 1.0 / alpha_) * z;
            }
            case Family::two_param_ml: {
                const double g = detail::gamma_sample(rng, beta_);
                return std::pow(g, 1.0 / alpha_) * detail::stable_or_one(rng, alpha_);
            }
            case Family::semi_ml_candidate:
                throw std::invalid_argument("semi_ml_candidate: no exact sampler is known");
        }
        throw std::logic_error("unreachable");
    }

    std::vector<double> sample(RngState& rng, std::size_t n) const {
        std::vector<double> out(n);
        for (auto& v : out) v = sample_one(rng);
        return out;
    }

    // Exact transform per family: Laplace for the nonnegative laws, real CF
    // profile for linnik. Closed forms carry a complex-plane evaluator.
    TransformFn closed_form_transform() const {
        switch (family_) {
            case Family::exponential: {
                const double rate = alpha_;
                TransformFn t = lt_from_psi(psi_scaled(psi_power(1.0), rate));
                t.with_complex([rate](std::complex<double> s) { return 1.0 / (1.0 + s / rate); });
                return t;
            }
            case Family::gamma_exponent: {
                const double a = alpha_;
                TransformFn t = lt_from_psi(psi_gamma_exponent(a));
                t.with_complex([a](std::complex<double> s) {
                    return std::pow(1.0 + s, std::complex<double>(-a));
                });
                return t;
            }
            case Family::positive_stable: {
                const double a = alpha_;
                TransformFn t([a](double s) { return std::exp(-std::pow(s, a)); },
                              TransformDomain::laplace);
                t.with_complex([a](std::complex<double> s) { return std::exp(-std::pow(s, a)); });
                return t;
            }
            case Family::mittag_leffler: {
                const double a = alpha_, c = scale_;
                auto psi = PsiFunction(
                    [a, c](double s) { return s == 0.0 ? 0.0 : std::pow(c * s, a); },
                    [a, c](double s) { return a * c * std::pow(c * s, a - 1.0); },
                    PsiFamily::power, {a, c});
                TransformFn t = lt_from_psi(psi);
                t.with_complex([a, c](std::complex<double> s) {
                    return 1.0 / (1.0 + std::pow(c * s, a));
                });
                return t;
            }
            case Family::linnik: {
                const double a = alpha_, c = scale_;
                auto psi = PsiFunction(
                    [a, c](double s) { return s == 0.0 ? 0.0 : std::pow(c * s, a); },
                    [a, c](double s) { return a * c * std::pow(c * s, a - 1.0); },
                    PsiFamily::power, {a, c});
                return cf_profile_from_psi(psi);
            }
            case Family::two_param_ml: {
                const double a = alpha_, b = beta_;
                TransformFn t = lt_from_psi(psi_two_param(a, b));
                t.with_complex([a, b](std::complex<double> s) {
                    return std::pow(1.0 + std::pow(s, a), std::complex<double>(-b));
                });
                return t;
            }
            case Family::semi_ml_candidate:
                return lt_from_psi(psi_log_periodic(alpha_, beta_, b_));
        }
        throw std::logic_error("unreachable");
    }

private:
    DistributionSpec(Family f, double alpha, double beta, double scale)
        : family_(f), alpha_(alpha), beta_(beta), scale_(scale) {}

    Family family_;
    double alpha_;
    double beta_;   // also holds eps for the semi-ML candidate
    double scale_;
    double b_ = 0.5;
};

inline TransformFn closed_form_transform(const DistributionSpec& spec) {
    return spec.closed_form_transform();
}

inline std::vector<double> sample_mittag_leffler(RngState& rng, double alpha, double scale,
                                                 std::size_t n) {
    return DistributionSpec::mittag_leffler(alpha, scale).sample(rng, n);
}

inline std::vector<double> sample_linnik(RngState& rng, double alpha, double scale,
                                         std::size_t n) {
    return DistributionSpec::linnik(alpha, scale).sample(rng, n);
}

// sums of N i.i.d. base draws, N geometric on {1,2,...} with P(N=k) = p q^{k-1}
inline std::vector<double> sample_geometric_sum(RngState& rng, const DistributionSpec& base,
                                                double p, std::size_t n) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("sample_geometric_sum: need p in (0,1)");
    if (!base.has_sampler())
        throw std::invalid_argument("sample_geometric_sum: base family has no sampler");
    std::vector<double> out(n);
    for (auto& v : out) {
        const std::uint64_t count = detail::geometric_from_one(rng, p);
        double acc = 0.0;
        for (std::uint64_t k = 0; k < count; ++k) acc += base.sample_one(rng);
        v = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo transforms.
// ---------------------------------------------------------------------------

enum class TransformKind { lt, cf_real };

struct EmpiricalTransform {
    std::vector<double> arguments;
    std::vector<double> values;
    std::vector<double> std_errors;
};

// mean of e^{-s x} (lt) or cos(t x) (cf_real) with per-argument standard error
inline EmpiricalTransform empirical_transform(const std::vector<double>& samples,
                                              const std::vector<double>& arguments,
                                              TransformKind kind) {
    if (samples.empty()) throw std::invalid_argument("empirical_transform: empty sample");
    EmpiricalTransform out;
    out.arguments = arguments;
    const double n = static_cast<double>(samples.size());
    for (double arg : arguments) {
        double mean = 0.0;
        for (double x : samples)
            mean += kind == TransformKind::lt ? std::exp(-arg * x) : std::cos(arg * x);
        mean /= n;
        double var = 0.0;
        for (double x : samples) {
            const double v = kind == TransformKind::lt ? std::exp(-arg * x) : std::cos(arg * x);
            var += (v - mean) * (v - mean);
        }
        var = samples.size() > 1 ? var / (n - 1.0) : 0.0;
        out.values.push_back(mean);
        out.std_errors.push_back(std::sqrt(var / n));
    }
    return out;
}

}  // namespace gidlab
