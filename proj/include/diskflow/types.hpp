// types.hpp — shared domain types for the exterior-disk flow toolkit.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace diskflow {

using Cplx = std::complex<double>;

/// A complex value with an attached absolute-error estimate.
struct ComplexResult {
    Cplx value{0.0, 0.0};
    double abs_err = 0.0;
};

/// Boundary-flow parameters: angular velocity alpha, radial flux delta
/// (delta > 0 is suction into the disk, delta < 0 injection).
struct FlowParams {
    double alpha = 0.0;
    double delta = 0.0;

    /// The toolkit's configured smallness window.
    static constexpr double small_regime_window = 0.2;
    bool small_regime() const {
        return std::abs(alpha) + std::abs(delta) <= small_regime_window;
    }
};

/// Complex order attached to angular mode n: the square root of
/// sqrt(n^2 + (delta/2)^2) + i alpha n, taken with positive real part.
inline Cplx mode_order(const FlowParams& p, int n) {
    if (n == 0) throw std::domain_error("mode_order: mode 0 carries no order");
    double a = std::sqrt(double(n) * n + 0.25 * p.delta * p.delta);
    return std::sqrt(Cplx{a, p.alpha * n});
}

/// Principal square root convention used throughout: Re sqrt(z) > 0 away
/// from the cut (-inf, 0].
inline Cplx principal_sqrt(Cplx z) { return std::sqrt(z); }

inline bool on_negative_real_axis(Cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0;
}

} // namespace diskflow
