#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "gidlab/transform.hpp"

namespace gidlab {

inline constexpr int kTalbotNodes = 32;

// Fixed-Talbot numerical Laplace inversion (Abate-Valko), M nodes.
// `f` is the transform of the target function itself (e.g. 1/(s(1+s)) for
// 1 - e^{-x}), evaluated on the Talbot contour. Accuracy on smooth inputs is
// well below 1e-8 at M = 32.
inline double invert_lt_at(const ComplexTransform& f, double x, int nodes = kTalbotNodes) {
    if (!(x > 0.0))
        throw std::invalid_argument("invert_lt_at: need x > 0");
    if (nodes < 8)
        throw std::invalid_argument("invert_lt_at: need at least 8 nodes");
    const double pi = 3.14159265358979323846264338328;
    const double r = 2.0 * nodes / (5.0 * x);

    const std::complex<double> f0 = f(std::complex<double>(r, 0.0));
    double acc = 0.5 * f0.real() * std::exp(r * x);
    if (!std::isfinite(acc))
        throw std::runtime_error("invert_lt_at: non-finite evaluation at the real node");

    for (int k = 1; k < nodes; ++k) {
        const double th = k * pi / nodes;
        const double cot = std::cos(th) / std::sin(th);
        const std::complex<double> s(r * th * cot, r * th);
        const double sigma = th + (th * cot - 1.0) * cot;
        const std::complex<double> term =
            std::exp(x * s) * f(s) * std::complex<double>(1.0, sigma);
        if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
            throw std::runtime_error("invert_lt_at: non-finite contour evaluation");
        acc += term.real();
    }
    return r / nodes * acc;
}

inline std::vector<double> invert_lt(const ComplexTransform& f, const std::vector<double>& xs,
                                     int nodes = kTalbotNodes) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(invert_lt_at(f, x, nodes));
    return out;
}

inline std::vector<double> invert_lt(const TransformFn& phi, const std::vector<double>& xs,
                                     int nodes = kTalbotNodes) {
    if (!phi.has_complex())
        throw std::invalid_argument("invert_lt: the transform has no complex-plane evaluator");
    return invert_lt(phi.complex_evaluator(), xs, nodes);
}

}  // namespace gidlab
