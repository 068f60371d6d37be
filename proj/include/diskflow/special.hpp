// special.hpp — complex Gamma and modified Bessel functions of complex order
// and complex argument, with empirical bound-margin scans.
#pragma once

#include <string>

#include "diskflow/numerics.hpp"
#include "diskflow/types.hpp"

namespace diskflow {

/// Complex Gamma function. Lanczos approximation for Re z >= 0.5, reflection
/// below. Relative error below 1e-12 on the desk-scale strip |z| <= 20.
/// Throws std::domain_error at the poles z = 0, -1, -2, ...
Cplx gamma_c(Cplx z);

/// Taylor series of Log Gamma(1+z) about z = 0, built from the Euler constant
/// and zeta values: gamma*(-z) + sum_{k=2}^{terms} zeta(k)/k * (-z)^k.
/// Requires |z| <= 0.5; the reported abs_err is the truncation bound
/// |z|^{terms+1} / (1 - |z|).
ComplexResult log_gamma_taylor(Cplx z, int terms = 40);

/// Order of a modified Bessel function. The toolkit works with Re mu >= 0;
/// the distance to the nearest integer drives method selection for K
/// (orders at or near an integer are routed to the integral representation,
/// where the connection formula would divide by a vanishing sine).
struct BesselOrder {
    Cplx mu{1.0, 0.0};
    double dist_to_integer = 0.0;
    bool near_integer = false;

    explicit BesselOrder(Cplx mu_);
};

/// Modified Bessel function of the first kind, power series with Gamma
/// coefficients; asymptotic branch beyond |z| = 30. Requires z off the cut
/// (-inf, 0] and |z| <= 200 (the supported desk-scale window).
ComplexResult bessel_i(const BesselOrder& order, Cplx z, double tol = 1e-14);

/// Modified Bessel function of the second kind. Connection formula
/// pi/2 (I_{-mu} - I_mu)/sin(mu pi) away from integer orders, integral
/// representation otherwise; asymptotic branch beyond |z| = 30.
ComplexResult bessel_k(const BesselOrder& order, Cplx z, double tol = 1e-14);

/// Method-specific K evaluators, exposed so the two routes can be
/// cross-checked against each other.
ComplexResult bessel_k_connection(const BesselOrder& order, Cplx z, double tol = 1e-14);
ComplexResult bessel_k_integral(const BesselOrder& order, Cplx z, double tol = 1e-12);

// Exponentially scaled kernels for quadrature engines:
//   bessel_i_scaled = exp(-Re z) I_mu(z),  bessel_k_scaled = exp(+Re z) K_mu(z).
// These stay bounded for large Re z, so products along radial integrals can
// carry the exponential factors explicitly (log-space bookkeeping).
Cplx bessel_i_scaled(Cplx mu, Cplx z);
Cplx bessel_k_scaled(Cplx mu, Cplx z);

// Derivatives by recurrence (never finite differences):
//   K'_mu(z) = -(mu/z) K_mu(z) - K_{mu-1}(z),
//   I'_mu(z) = I_{mu-1}(z) - (mu/z) I_mu(z).
Cplx bessel_k_deriv(Cplx mu, Cplx z);
Cplx bessel_i_deriv(Cplx mu, Cplx z);
Cplx bessel_k_deriv_scaled(Cplx mu, Cplx z); // exp(+Re z) K'_mu(z)
Cplx bessel_i_deriv_scaled(Cplx mu, Cplx z); // exp(-Re z) I'_mu(z)

/// |z (K_mu I'_mu - K'_mu I_mu) - 1|: vanishes identically for the exact
/// kernels, so the value measures evaluator error directly.
double wronskian_defect(const BesselOrder& order, Cplx z);

/// Families of kernel inequalities scanned empirically. The unnamed
/// constants in the bounds are replaced by observed sup ratios (C == 1 in
/// the bound formula); acceptance is finiteness and refinement stability.
enum class KernelBound {
    envelope,          // |K|, |I| against power/exponential envelopes
    radial_moment_k,   // integrals of s^{2-k-delta/2} |K_{xi-k}| over radial windows
    radial_moment_i,   // integrals of s^{...} |I_{xi+k}| over radial windows
    vorticity_moment,  // integrals of s^{1-delta/2} |K_xi|, |I_xi|
};

/// Sector sample grid: moduli log-spaced in [r_min, r_max], arguments
/// uniform in (-(pi/2 - eps), pi/2 - eps).
struct SectorGrid {
    double r_min = 1e-3;
    double r_max = 0.5;
    int n_radial = 6;
    int n_angular = 5;
};

struct BoundMarginReport {
    std::string check_id;
    std::string region;
    double sup_ratio = 0.0;
    Cplx worst_point{0.0, 0.0};
    long samples = 0;
};

/// Scan one inequality family over the sector grid and report the observed
/// sup of |quantity| / bound-formula. For the envelope family, params feeds
/// the order mu = mode order of n = 1; eps is the sector margin. The moment
/// families require alpha != 0 and delta >= 0.
BoundMarginReport bessel_bound_margin(KernelBound which, const FlowParams& params,
                                      double eps, const SectorGrid& grid);

} // namespace diskflow
