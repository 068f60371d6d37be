// numerics.hpp — adaptive quadrature on finite, semi-infinite and contour paths.
#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace diskflow {

using Cplx = std::complex<double>;

/// Result of a quadrature call: value plus an absolute error estimate.
struct QuadResult {
    Cplx value{0.0, 0.0};
    double abs_err = 0.0;
    long evaluations = 0;
};

/// Thrown when the subdivision budget runs out before convergence.
/// Carries the best estimate obtained so far.
class QuadBudgetError : public std::runtime_error {
public:
    QuadBudgetError(const std::string& what, QuadResult best)
        : std::runtime_error(what), best_estimate(best) {}
    QuadResult best_estimate;
};

using Integrand = std::function<Cplx(double)>;
using PathFunction = std::function<Cplx(Cplx)>;

/// One smooth arc of a contour: a straight segment or a circular arc.
struct ContourSegment {
    enum class Kind { line, arc } kind = Kind::line;
    // line: from z0 to z1
    Cplx z0{0, 0}, z1{0, 0};
    // arc: center + radius, angle theta0 -> theta1 (radians, may wrap)
    Cplx center{0, 0};
    double radius = 0.0, theta0 = 0.0, theta1 = 0.0;

    static ContourSegment line(Cplx a, Cplx b);
    static ContourSegment arc(Cplx center, double radius, double theta0, double theta1);

    Cplx point(double t) const;      // t in [0,1]
    Cplx derivative(double t) const; // dz/dt
    Cplx start() const { return point(0.0); }
    Cplx end() const { return point(1.0); }
};

/// A piecewise-smooth path in the complex plane. Consecutive segment
/// endpoints must coincide within 1e-12; closed contours end where they start.
struct ContourSpec {
    std::vector<ContourSegment> segments;
    bool closed = false;
    bool counterclockwise = true;

    void validate() const; // throws std::invalid_argument on a malformed path
    ContourSpec reversed() const;

    static ContourSpec circle(Cplx center, double radius);
    static ContourSpec annular_sector(double r_inner, double r_outer,
                                      double theta_lo, double theta_hi);
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;    // convergence also accepted at rel_tol * |value|
    long max_evaluations = 200000;
};

/// Adaptive Gauss-Kronrod quadrature of f over [a, b]. Handles integrable
/// endpoint singularities (exponent > -1) by graded subdivision.
QuadResult quad_finite(const Integrand& f, double a, double b,
                       double tol = 1e-10, QuadOptions opts = {});

/// Integral of f over [a, infinity). The sign of decay_hint selects the
/// tail model: decay_hint > 0 means |f| ~ exp(-decay_hint * s) up to slowly
/// varying factors (truncation point chosen from the envelope so the tail
/// bound is below tol/2); decay_hint < -1 means |f| ~ s^decay_hint and the
/// tail is folded in exactly by the substitution s = a + (1-t)/t.
QuadResult quad_semi_infinite(const Integrand& f, double a, double tol,
                              double decay_hint, QuadOptions opts = {});

/// Contour integral of f along the path, segment-wise in orientation order.
QuadResult quad_contour(const PathFunction& f, const ContourSpec& path,
                        double tol = 1e-10, QuadOptions opts = {});

} // namespace diskflow
