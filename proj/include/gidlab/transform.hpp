#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gidlab {

inline std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw std::invalid_argument("geometric_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo * std::exp(step * static_cast<double>(i));
    g.back() = hi;
    return g;
}

// Defaults of the complete-monotonicity certificate. The relative step is
// deliberately small: pass-margins then sit at rounding level (|m| ~ 1e-16)
// while every in-scope violation shows up at order 1-2 with |m| >= 1e-4.
inline constexpr int kCmMaxOrder = 8;
inline constexpr double kCmTol = 1e-7;
inline constexpr double kCmRelStep = 0x1.0p-10;

inline std::vector<double> default_cm_grid() { return geometric_grid(1e-3, 10.0, 200); }

// ---------------------------------------------------------------------------
// PsiFunction: the exponent psi in phi = 1/(1+psi). psi(0) == 0 exactly.
// ---------------------------------------------------------------------------

enum class PsiFamily {
    power,
    log_periodic,
    gamma_exponent,
    two_param,
    discrete_sequence,
    scaled,
    composite,
};

class PsiFunction {
public:
    PsiFunction() = default;

    PsiFunction(std::function<double(double)> eval, PsiFamily family,
                std::vector<double> params)
        : eval_(std::move(eval)), family_(family), params_(std::move(params)) {}

    PsiFunction(std::function<double(double)> eval, std::function<double(double)> deriv,
                PsiFamily family, std::vector<double> params)
        : eval_(std::move(eval)),
          deriv_(std::move(deriv)),
          family_(family),
          params_(std::move(params)) {}

    double operator()(double s) const { return eval_(s); }

    bool derivative_available() const { return static_cast<bool>(deriv_); }

    // analytic derivative when available, otherwise a central difference with
    // relative step 1e-6 (never crosses zero: s - delta > 0 for s > 0)
    double derivative(double s) const {
        if (deriv_) return deriv_(s);
        if (!(s > 0.0))
            throw std::domain_error("PsiFunction::derivative: numeric derivative needs s > 0");
        const double d = s * 1e-6;
        return (eval_(s + d) - eval_(s - d)) / (2.0 * d);
    }

    PsiFamily family() const { return family_; }
    const std::vector<double>& params() const { return params_; }

private:
    std::function<double(double)> eval_;
    std::function<double(double)> deriv_;
    PsiFamily family_ = PsiFamily::composite;
    std::vector<double> params_;
};

// psi(s) = s^alpha
inline PsiFunction psi_power(double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("psi_power: alpha must be positive");
    auto eval = [alpha](double s) { return s == 0.0 ? 0.0 : std::pow(s, alpha); };
    auto deriv = [alpha](double s) { return alpha * std::pow(s, alpha - 1.0); };
    return PsiFunction(eval, deriv, PsiFamily::power, {alpha});
}

// psi(s) = (1+s)^alpha - 1
inline PsiFunction psi_gamma_exponent(double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("psi_gamma_exponent: alpha must be positive");
    auto eval = [alpha](double s) {
        return s == 0.0 ? 0.0 : std::expm1(alpha * std::log1p(s));
    };
    auto deriv = [alpha](double s) { return alpha * std::pow(1.0 + s, alpha - 1.0); };
    return PsiFunction(eval, deriv, PsiFamily::gamma_exponent, {alpha});
}

// psi(s) = (1+s^alpha)^beta - 1
inline PsiFunction psi_two_param(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("psi_two_param: alpha and beta must be positive");
    auto eval = [alpha, beta](double s) {
        return s == 0.0 ? 0.0 : std::expm1(beta * std::log1p(std::pow(s, alpha)));
    };
    auto deriv = [alpha, beta](double s) {
        const double sa = std::pow(s, alpha);
        return alpha * beta * std::pow(1.0 + sa, beta - 1.0) * std::pow(s, alpha - 1.0);
    };
    return PsiFunction(eval, deriv, PsiFamily::two_param, {alpha, beta});
}

// psi(s) = s^alpha * (1 + eps * sin(2*pi*ln(s)/ln(1/b)))
// Satisfies psi(s) = a psi(b s) with a = b^-alpha by construction; whether it
// is Bernstein for given (alpha, eps, b) is a question for check_gid.
inline PsiFunction psi_log_periodic(double alpha, double eps, double b) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("psi_log_periodic: need alpha in (0,1]");
    if (!(b > 0.0 && b < 1.0))
        throw std::invalid_argument("psi_log_periodic: need b in (0,1)");
    if (!(std::fabs(eps) < 1.0))
        throw std::invalid_argument("psi_log_periodic: need |eps| < 1 for positivity");
    const double omega = 6.283185307179586476925286766559 / std::log(1.0 / b);
    auto eval = [alpha, eps, omega](double s) {
        if (s == 0.0) return 0.0;
        return std::pow(s, alpha) * (1.0 + eps * std::sin(omega * std::log(s)));
    };
    return PsiFunction(eval, PsiFamily::log_periodic, {alpha, eps, b});
}

// scaled(psi, c): s -> psi(s)/c, the geometric-compounding shift of the exponent
inline PsiFunction psi_scaled(const PsiFunction& psi, double c) {
    if (!(c > 0.0))
        throw std::invalid_argument("psi_scaled: c must be positive");
    std::vector<double> params = psi.params();
    params.push_back(c);
    if (psi.derivative_available()) {
        auto eval = [psi, c](double s) { return psi(s) / c; };
        auto deriv = [psi, c](double s) { return psi.derivative(s) / c; };
        return PsiFunction(eval, deriv, PsiFamily::scaled, std::move(params));
    }
    auto eval = [psi, c](double s) { return psi(s) / c; };
    return PsiFunction(eval, PsiFamily::scaled, std::move(params));
}

// ---------------------------------------------------------------------------
// TransformFn: Laplace transform (s >= 0) or real CF profile 1/(1+psi(|t|)).
// ---------------------------------------------------------------------------

enum class TransformDomain { laplace, cf_profile };

using ComplexTransform = std::function<std::complex<double>(std::complex<double>)>;

class TransformFn {
public:
    TransformFn() = default;

    TransformFn(std::function<double(double)> eval, TransformDomain domain)
        : eval_(std::move(eval)), domain_(domain) {}

    TransformFn(std::function<double(double)> eval, TransformDomain domain,
                PsiFunction source)
        : eval_(std::move(eval)), domain_(domain), source_(std::move(source)) {}

    double operator()(double s) const { return eval_(s); }

    TransformDomain domain() const { return domain_; }
    const std::optional<PsiFunction>& source() const { return source_; }

    bool has_complex() const { return static_cast<bool>(complex_eval_); }
    std::complex<double> complex_at(std::complex<double> s) const {
        if (!complex_eval_)
            throw std::invalid_argument("TransformFn: no complex-plane evaluator attached");
        return complex_eval_(s);
    }
    const ComplexTransform& complex_evaluator() const { return complex_eval_; }
    TransformFn& with_complex(ComplexTransform c) {
        complex_eval_ = std::move(c);
        return *this;
    }

private:
    std::function<double(double)> eval_;
    TransformDomain domain_ = TransformDomain::laplace;
    std::optional<PsiFunction> source_;
    ComplexTransform complex_eval_;
};

// phi(s) = 1/(1+psi(s)); rejects exponents with psi(0) != 0
inline TransformFn lt_from_psi(const PsiFunction& psi) {
    if (psi(0.0) != 0.0)
        throw std::invalid_argument("lt_from_psi: psi(0) must be exactly 0");
    auto eval = [psi](double s) { return 1.0 / (1.0 + psi(s)); };
    return TransformFn(eval, TransformDomain::laplace, psi);
}

// CF profile phi(t) = 1/(1+psi(|t|)) on the real line
inline TransformFn cf_profile_from_psi(const PsiFunction& psi) {
    if (psi(0.0) != 0.0)
        throw std::invalid_argument("cf_profile_from_psi: psi(0) must be exactly 0");
    auto eval = [psi](double t) { return 1.0 / (1.0 + psi(std::fabs(t))); };
    return TransformFn(eval, TransformDomain::cf_profile, psi);
}

// Geometric parameters: p stored with its exact complement.
struct GeometricParams {
    double p;
    double q;
    explicit GeometricParams(double p_) : p(p_), q(1.0 - p_) {
        if (!(p > 0.0 && p < 1.0))
            throw std::invalid_argument("GeometricParams: need p in (0,1)");
    }
};

// phi -> p*phi/(1 - q*phi), the transform of a geometric(p) random sum.
// p = 1 is the identity; p outside (0,1] is rejected.
inline TransformFn geometric_compound(const TransformFn& phi, double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("geometric_compound: need p in (0,1]");
    if (p == 1.0) return phi;
    const double q = 1.0 - p;
    auto eval = [phi, p, q](double s) {
        const double v = phi(s);
        const double den = 1.0 - q * v;
        if (!(den > 0.0))
            throw std::domain_error("geometric_compound: malformed transform (q*phi >= 1)");
        return p * v / den;
    };
    TransformFn out(eval, phi.domain());
    if (phi.source()) out = TransformFn(eval, phi.domain(), psi_scaled(*phi.source(), p));
    if (phi.has_complex()) {
        auto inner = phi.complex_evaluator();
        out.with_complex([inner, p, q](std::complex<double> s) {
            const auto v = inner(s);
            return p * v / (1.0 - q * v);
        });
    }
    return out;
}

inline TransformFn geometric_compound(const TransformFn& phi, const GeometricParams& g) {
    return geometric_compound(phi, g.p);
}

// phi -> phi(c*s)
inline TransformFn scale_argument(const TransformFn& phi, double c) {
    if (!(c > 0.0))
        throw std::invalid_argument("scale_argument: need c > 0");
    if (c == 1.0) return phi;
    auto eval = [phi, c](double s) { return phi(c * s); };
    TransformFn out(eval, phi.domain());
    if (phi.source()) {
        const PsiFunction inner = *phi.source();
        std::vector<double> params = inner.params();
        params.push_back(c);
        PsiFunction scaled_psi =
            inner.derivative_available()
                ? PsiFunction([inner, c](double s) { return inner(c * s); },
                              [inner, c](double s) { return c * inner.derivative(c * s); },
                              PsiFamily::composite, params)
                : PsiFunction([inner, c](double s) { return inner(c * s); },
                              PsiFamily::composite, params);
        out = TransformFn(eval, phi.domain(), std::move(scaled_psi));
    }
    if (phi.has_complex()) {
        auto inner = phi.complex_evaluator();
        out.with_complex([inner, c](std::complex<double> s) { return inner(c * s); });
    }
    return out;
}

// ---------------------------------------------------------------------------
// Numerical complete-monotonicity certificate.
// ---------------------------------------------------------------------------

enum class CmVerdict { cm_pass, cm_fail };

struct CMReport {
    std::vector<double> grid;
    int max_order = 0;
    double margin = 0.0;  // min over grid and orders of (-1)^k D_h^k f, normalized
    CmVerdict verdict = CmVerdict::cm_fail;
    double tol = 0.0;
    int failing_order = -1;     // set when verdict == cm_fail
    double failing_point = 0.0; // set when verdict == cm_fail
    std::string diagnostic;

    bool passed() const { return verdict == CmVerdict::cm_pass; }
};

// Checks (-1)^k D_h^k f(s) >= -tol * scale for k = 0..max_order at every grid
// point, with forward step h = rel_step * s. Valid for any h when f is truly
// completely monotone, so the certificate is sound; it is finite, not a proof.
inline CMReport check_complete_monotone(const std::function<double(double)>& f,
                                        const std::vector<double>& grid, int max_order,
                                        double tol, double rel_step = kCmRelStep) {
    if (grid.empty())
        throw std::invalid_argument("check_complete_monotone: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1])))
            throw std::invalid_argument(
                "check_complete_monotone: grid must be positive and strictly increasing");
    }
    if (max_order < 2)
        throw std::invalid_argument("check_complete_monotone: need max_order >= 2");
    if (!(rel_step > 0.0))
        throw std::invalid_argument("check_complete_monotone: need rel_step > 0");

    CMReport rep;
    rep.grid = grid;
    rep.max_order = max_order;
    rep.tol = tol;
    rep.margin = std::numeric_limits<double>::infinity();

    // Pascal row cache: binom[k][j]
    std::vector<std::vector<double>> binom(static_cast<std::size_t>(max_order) + 1);
    for (int k = 0; k <= max_order; ++k) {
        binom[k].assign(static_cast<std::size_t>(k) + 1, 1.0);
        for (int j = 1; j < k; ++j) binom[k][j] = binom[k - 1][j - 1] + binom[k - 1][j];
    }

    std::vector<double> fv(static_cast<std::size_t>(max_order) + 1);
    for (double s : grid) {
        const double h = rel_step * s;
        for (int j = 0; j <= max_order; ++j) {
            fv[j] = f(s + h * j);
            if (!std::isfinite(fv[j])) {
                rep.verdict = CmVerdict::cm_fail;
                rep.margin = -std::numeric_limits<double>::infinity();
                rep.failing_order = 0;
                rep.failing_point = s + h * j;
                rep.diagnostic = "non-finite evaluation at s = " + std::to_string(s + h * j);
                return rep;
            }
        }
        for (int k = 0; k <= max_order; ++k) {
            double value = 0.0;
            double scale = 0.0;
            double sign = 1.0;
            for (int j = 0; j <= k; ++j) {
                value += sign * binom[k][j] * fv[j];
                scale += binom[k][j] * std::fabs(fv[j]);
                sign = -sign;
            }
            if (scale == 0.0) continue;  // identically-zero window
            const double m = value / scale;
            if (m < rep.margin) {
                rep.margin = m;
                if (m < -tol) {
                    rep.failing_order = k;
                    rep.failing_point = s;
                }
            }
        }
    }
    if (!std::isfinite(rep.margin)) rep.margin = 0.0;  // f == 0 everywhere
    rep.verdict = rep.margin >= -tol ? CmVerdict::cm_pass : CmVerdict::cm_fail;
    if (!rep.passed() && rep.diagnostic.empty())
        rep.diagnostic = "order-" + std::to_string(rep.failing_order) +
                         " sign violation near s = " + std::to_string(rep.failing_point);
    return rep;
}

struct GidReport {
    bool pass = false;
    double psi_at_zero = 0.0;
    CMReport cm;
};

// GID <=> psi(0) = 0 and psi' completely monotone. The derivative is analytic
// when the family provides one, a central difference otherwise.
inline GidReport check_gid(const PsiFunction& psi, const std::vector<double>& grid,
                           int max_order = kCmMaxOrder, double tol = kCmTol) {
    GidReport rep;
    rep.psi_at_zero = psi(0.0);
    auto deriv = [&psi](double s) { return psi.derivative(s); };
    rep.cm = check_complete_monotone(deriv, grid, max_order, tol);
    rep.pass = std::fabs(rep.psi_at_zero) <= 1e-12 && rep.cm.passed();
    if (std::fabs(rep.psi_at_zero) > 1e-12 && rep.cm.diagnostic.empty())
        rep.cm.diagnostic = "psi(0) != 0";
    return rep;
}

inline GidReport check_gid(const PsiFunction& psi) {
    return check_gid(psi, default_cm_grid());
}

// max over the grid of |psi(s) - a psi(bs)| / (1 + |psi(s)|); zero means the
// semi-stable functional equation holds there
inline double semi_scaling_residual(const PsiFunction& psi, double a, double b,
                                    const std::vector<double>& grid) {
    if (!(b > 0.0 && b < 1.0 && a > 1.0))
        throw std::invalid_argument("semi_scaling_residual: need 0 < b < 1 < a");
    double worst = 0.0;
    for (double s : grid) {
        const double v = psi(s);
        const double r = std::fabs(v - a * psi(b * s)) / (1.0 + std::fabs(v));
        if (r > worst) worst = r;
    }
    return worst;
}

// max over the grid of |phi(s) - p phi(bs)/(1 - q phi(bs))|: the transform
// reading of the renewal fixed-point equation (compound, then scale by b)
inline double compound_then_scale_fixed_point_residual(const TransformFn& phi, double p,
                                                       double b,
                                                       const std::vector<double>& grid) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("fixed_point_residual: need p in (0,1)");
    if (!(b > 0.0 && b < 1.0))
        throw std::invalid_argument("fixed_point_residual: need b in (0,1)");
    const double q = 1.0 - p;
    double worst = 0.0;
    for (double s : grid) {
        const double vb = phi(b * s);
        const double den = 1.0 - q * vb;
        if (!(den > 0.0))
            throw std::domain_error(
                "fixed_point_residual: malformed transform (q*phi(bs) >= 1)");
        const double r = std::fabs(phi(s) - p * vb / den);
        if (r > worst) worst = r;
    }
    return worst;
}

}  // namespace gidlab
