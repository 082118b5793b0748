#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gidlab/transform.hpp"

namespace gidlab {

// ---------------------------------------------------------------------------
// Discrete renewal sequences on the unit lattice. Transform convention:
// Phi_a(s) = sum_n a_n e^{-s n}, so s = 0 plays the generating-function
// argument 1.
// ---------------------------------------------------------------------------

// sum_{n=0}^{N} coef[n] e^{-s n}, Horner in w = e^{-s}
inline double sequence_transform(const std::vector<double>& coef, double s) {
    const double w = std::exp(-s);
    double acc = 0.0;
    for (std::size_t i = coef.size(); i-- > 0;) acc = coef[i] + w * acc;
    return acc;
}

struct DiscreteRenewalSequence {
    std::vector<double> f;  // f[n] = first-occurrence probability, f[0] = 0
    std::vector<double> u;  // u[n] = occurrence probability, u[0] = 1
    double f_total = 0.0;   // sum of f
    bool transient = false; // f_total < 1

    std::size_t max_index() const { return u.size() - 1; }
};

// u from f by the renewal recursion u_n = sum_{k=1..n} f_k u_{n-k}, u_0 = 1
inline DiscreteRenewalSequence u_from_f(const std::vector<double>& f) {
    if (f.empty() || f[0] != 0.0)
        throw std::invalid_argument("u_from_f: f[0] must exist and equal 0 (index = trial)");
    double total = 0.0;
    for (double v : f) {
        if (!(v >= 0.0) || v > 1.0)
            throw std::invalid_argument("u_from_f: entries must lie in [0,1]");
        total += v;
    }
    if (total > 1.0 + 1e-12) throw std::invalid_argument("u_from_f: sum of f exceeds 1");

    DiscreteRenewalSequence seq;
    seq.f = f;
    seq.f_total = total;
    seq.transient = total < 1.0 - 1e-12;
    seq.u.assign(f.size(), 0.0);
    seq.u[0] = 1.0;
    for (std::size_t n = 1; n < f.size(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) acc += f[k] * seq.u[n - k];
        seq.u[n] = acc;
    }
    return seq;
}

// |Phi_u(s) (1 - Phi_f(s)) - 1|, which vanishes for the untruncated sequences
inline double renewal_identity_residual(const DiscreteRenewalSequence& seq, double s) {
    return std::fabs(sequence_transform(seq.u, s) * (1.0 - sequence_transform(seq.f, s)) - 1.0);
}

// truncation bound for the identity residual (u_n, f_n <= 1 give geometric
// tails), plus a rounding allowance for the O(N) summations
inline double renewal_identity_bound(const DiscreteRenewalSequence& seq, double s) {
    const double n1 = static_cast<double>(seq.max_index() + 1);
    const double tail = std::exp(-s * n1) / (-std::expm1(-s));
    const double phi_u = sequence_transform(seq.u, s);
    return tail * (1.0 + phi_u + tail) + 1e-10;
}

// ---------------------------------------------------------------------------
// Simple random walk ingredients (up-step probability p_walk).
// ---------------------------------------------------------------------------

namespace detail {

inline double log_central_binomial(std::size_t n) {
    return std::lgamma(2.0 * static_cast<double>(n) + 1.0) -
           2.0 * std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace detail

// first-return-to-origin probabilities f_{2n} = C(2n,n) (pq)^n / (2n-1)
inline std::vector<double> first_return_probabilities(double p_walk, std::size_t n_max) {
    if (!(p_walk > 0.0 && p_walk < 1.0))
        throw std::invalid_argument("first_return_probabilities: p_walk in (0,1)");
    const double lpq = std::log(p_walk * (1.0 - p_walk));
    std::vector<double> f(n_max + 1, 0.0);
    for (std::size_t n = 1; 2 * n <= n_max; ++n) {
        f[2 * n] = std::exp(detail::log_central_binomial(n) + static_cast<double>(n) * lpq -
                            std::log(2.0 * static_cast<double>(n) - 1.0));
    }
    return f;
}

// return-to-origin transform U(s) = 1/sqrt(1 - 4pq e^{-2s})
inline double walk_return_transform(double p_walk, double s) {
    const double q = 1.0 - p_walk;
    return 1.0 / std::sqrt(1.0 - 4.0 * p_walk * q * std::exp(-2.0 * s));
}

// ladder transform with Catalan coefficients: Ubar(s) = (1 - sqrt(1-4pq
// e^{-2s})) / (2pq e^{-2s}) = 2/(1 + sqrt(1 - 4pq e^{-2s})), the second form
// being cancellation-free
inline double walk_ladder_transform(double p_walk, double s) {
    const double q = 1.0 - p_walk;
    return 2.0 / (1.0 + std::sqrt(1.0 - 4.0 * p_walk * q * std::exp(-2.0 * s)));
}

// ubar_{2n} = Catalan_n (pq)^n, n = 0..count-1
inline std::vector<double> walk_ladder_coefficients(double p_walk, std::size_t count) {
    const double q = 1.0 - p_walk;
    std::vector<double> out(count);
    for (std::size_t n = 0; n < count; ++n) {
        const double lcat =
            detail::log_central_binomial(n) - std::log(static_cast<double>(n) + 1.0);
        out[n] = std::exp(lcat + static_cast<double>(n) * std::log(p_walk * q));
    }
    return out;
}

struct WalkSequences {
    DiscreteRenewalSequence seq;
    double max_transform_error = 0.0;  // vs U(s) on the check grid
    double max_transform_bound = 0.0;  // geometric tail bound at the worst point
    bool within_bound = false;
};

// u_{2n} = C(2n,n) (pq)^n with odd entries zero (trial horizon n_max), f
// recovered by inverting the renewal recursion; the truncated transform is
// compared against U(s) under its geometric tail bound for s >= 0.05
inline WalkSequences walk_sequences(double p_walk, std::size_t n_max) {
    if (!(p_walk > 0.0 && p_walk < 1.0))
        throw std::invalid_argument("walk_sequences: p_walk in (0,1)");
    if (n_max < 2) throw std::invalid_argument("walk_sequences: n_max >= 2");
    const double q = 1.0 - p_walk;
    const double lpq = std::log(p_walk * q);

    WalkSequences out;
    auto& seq = out.seq;
    seq.u.assign(n_max + 1, 0.0);
    seq.u[0] = 1.0;
    for (std::size_t n = 1; 2 * n <= n_max; ++n)
        seq.u[2 * n] = std::exp(detail::log_central_binomial(n) + static_cast<double>(n) * lpq);

    // f_n = u_n - sum_{k=1..n-1} f_k u_{n-k}
    seq.f.assign(n_max + 1, 0.0);
    for (std::size_t n = 1; n <= n_max; ++n) {
        double acc = seq.u[n];
        for (std::size_t k = 1; k < n; ++k) acc -= seq.f[k] * seq.u[n - k];
        seq.f[n] = acc;
    }
    seq.f_total = 0.0;
    for (double v : seq.f) seq.f_total += v;
    seq.transient = seq.f_total < 1.0 - 1e-12;

    const std::size_t pairs = n_max / 2;
    for (double s : {0.05, 0.1, 0.25, 0.5, 1.0, 2.0}) {
        const double x = 4.0 * p_walk * q * std::exp(-2.0 * s);
        const double bound =
            std::pow(x, static_cast<double>(pairs + 1)) / (1.0 - x) + 1e-11;
        const double err =
            std::fabs(sequence_transform(seq.u, s) - walk_return_transform(p_walk, s));
        if (err > out.max_transform_error) {
            out.max_transform_error = err;
            out.max_transform_bound = bound;
        }
    }
    out.within_bound = out.max_transform_error <= out.max_transform_bound;
    return out;
}

// ---------------------------------------------------------------------------
// GID witnesses for the three discrete examples. Each builds the exponent
// psi with an exact zero at s = 0 and an analytic derivative, then runs the
// complete-monotonicity certificate.
// ---------------------------------------------------------------------------

struct FellerWitness {
    double psi_at_zero = 0.0;
    CMReport cm;
    bool pass = false;
    bool certified = true;  // false when outside the certifiable parameter range
    std::string note;
};

// transient event: omega(s) = Phi_f(s)/q, psi = (q/p)(1 - omega); psi' =
// (1/p) sum n f_n e^{-sn} is a positive mixture of exponentials
inline PsiFunction feller_transient_psi(const std::vector<double>& f) {
    const DiscreteRenewalSequence seq = u_from_f(f);  // validates f
    if (!seq.transient)
        throw std::invalid_argument("feller_transient_psi: event must be transient (sum f < 1)");
    const std::vector<double> fs = seq.f;
    // q computed by the same Horner pass used at every s, so psi(0) == 0 exactly
    const double q = sequence_transform(fs, 0.0);
    const double p = 1.0 - q;
    std::vector<double> nfs(fs.size(), 0.0);
    for (std::size_t n = 1; n < fs.size(); ++n) nfs[n] = static_cast<double>(n) * fs[n];
    auto eval = [fs, q, p](double s) { return (q - sequence_transform(fs, s)) / p; };
    auto deriv = [nfs, p](double s) { return sequence_transform(nfs, s) / p; };
    return PsiFunction(eval, deriv, PsiFamily::discrete_sequence, {q});
}

inline FellerWitness gid_witness_transient(const std::vector<double>& f,
                                           const std::vector<double>& grid,
                                           int max_order = kCmMaxOrder) {
    const PsiFunction psi = feller_transient_psi(f);
    const GidReport gid = check_gid(psi, grid, max_order);
    FellerWitness w;
    w.psi_at_zero = gid.psi_at_zero;
    w.cm = gid.cm;
    w.pass = gid.pass;
    return w;
}

// |p-q| U(s) = 1/(1+psi), psi = sqrt(1-4pq e^{-2s})/|p-q| - 1; psi(0) = 0
// exactly because (p-q)^2 = 1-4pq
inline PsiFunction feller_ex42_psi(double p_walk) {
    if (!(p_walk > 0.0 && p_walk < 1.0))
        throw std::invalid_argument("feller_ex42_psi: p_walk in (0,1)");
    const double q = 1.0 - p_walk;
    const double gap = std::fabs(p_walk - q);
    if (gap < 1e-9)
        throw std::domain_error("feller_ex42_psi: degenerate at p_walk = 1/2 (|p-q| = 0)");
    const double fourpq = 4.0 * p_walk * q;
    auto eval = [gap, fourpq](double s) {
        if (s == 0.0) return 0.0;
        return std::sqrt(1.0 - fourpq * std::exp(-2.0 * s)) / gap - 1.0;
    };
    auto deriv = [gap, fourpq](double s) {
        const double w = fourpq * std::exp(-2.0 * s);
        return w / (gap * std::sqrt(1.0 - w));
    };
    return PsiFunction(eval, deriv, PsiFamily::composite, {p_walk});
}

inline FellerWitness gid_witness_ex42(double p_walk, const std::vector<double>& grid,
                                      int max_order = kCmMaxOrder) {
    const PsiFunction psi = feller_ex42_psi(p_walk);
    const GidReport gid = check_gid(psi, grid, max_order);
    FellerWitness w;
    w.psi_at_zero = gid.psi_at_zero;
    w.cm = gid.cm;
    w.pass = gid.pass;
    return w;
}

// p Ubar(s) = 1/(1+psi), psi = 1/(p Ubar) - 1 = (1 + sqrt(1-4pq e^{-2s}))/(2p) - 1.
// psi(0) = 0 requires Ubar(0) = 1/p, which holds exactly when p_walk >= q_walk;
// below 1/2 the witness reports psi(0) = q/p - 1 instead of asserting.
inline PsiFunction feller_ex43_psi(double p_walk) {
    if (!(p_walk > 0.0 && p_walk < 1.0))
        throw std::invalid_argument("feller_ex43_psi: p_walk in (0,1)");
    const double q = 1.0 - p_walk;
    const double fourpq = 4.0 * p_walk * q;
    const bool zero_at_origin = p_walk >= q;
    auto eval = [p_walk, fourpq, zero_at_origin](double s) {
        if (s == 0.0 && zero_at_origin) return 0.0;
        return (1.0 + std::sqrt(1.0 - fourpq * std::exp(-2.0 * s))) / (2.0 * p_walk) - 1.0;
    };
    auto deriv = [p_walk, fourpq](double s) {
        const double w = fourpq * std::exp(-2.0 * s);
        return w / (2.0 * p_walk * std::sqrt(1.0 - w));
    };
    return PsiFunction(eval, deriv, PsiFamily::composite, {p_walk});
}

inline FellerWitness gid_witness_ex43(double p_walk, const std::vector<double>& grid,
                                      int max_order = kCmMaxOrder) {
    const PsiFunction psi = feller_ex43_psi(p_walk);
    const GidReport gid = check_gid(psi, grid, max_order);
    FellerWitness w;
    w.psi_at_zero = gid.psi_at_zero;
    w.cm = gid.cm;
    w.certified = p_walk >= 0.5;
    w.pass = w.certified && gid.pass;
    if (!w.certified)
        w.note = "psi(0) = q/p - 1 > 0 for p_walk < 1/2; reported without certification";
    return w;
}

}  // namespace gidlab
