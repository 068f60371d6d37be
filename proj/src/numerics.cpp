#include "diskflow/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace diskflow {

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
constexpr int kKronrod = 15;
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Panel {
    double a, b;
    Cplx value;
    double err;
    double resasc; // scale of |f| over the panel, for the roundoff floor
};

// Evaluate the embedded pair on [a, b]. 15 evaluations.
Panel gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Cplx fc = f(c);
    Cplx kron = kWgk[7] * fc;
    Cplx gauss = kWg[3] * fc;
    double fabs_sum = kWgk[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        Cplx fp = f(c + h * kXgk[i]);
        Cplx fm = f(c - h * kXgk[i]);
        kron += kWgk[i] * (fp + fm);
        fabs_sum += kWgk[i] * (std::abs(fp) + std::abs(fm));
        if (i % 2 == 1) gauss += kWg[i / 2] * (fp + fm);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = h * kron;
    double diff = std::abs(h * (kron - gauss));
    double scale = std::abs(h) * fabs_sum;
    // QUADPACK-style sharpening of the raw |K15 - G7| difference.
    if (scale > 0.0 && diff > 0.0)
        diff = scale * std::min(1.0, std::pow(200.0 * diff / scale, 1.5));
    p.err = diff;
    p.resasc = scale;
    return p;
}

struct PanelWorse {
    bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

bool finite(const Cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace

QuadResult quad_finite(const Integrand& f, double a, double b, double tol,
                       QuadOptions opts) {
    if (!(a < b)) throw std::invalid_argument("quad_finite: requires a < b");
    if (!(tol > 0)) throw std::invalid_argument("quad_finite: requires tol > 0");
    opts.abs_tol = tol;

    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
    Panel p0 = gk15(f, a, b);
    long evals = kKronrod;
    Cplx total = p0.value;
    double total_err = p0.err;
    double total_scale = p0.resasc;
    heap.push(p0);

    const double eps = std::numeric_limits<double>::epsilon();
    while (true) {
        double target = std::max({opts.abs_tol, opts.rel_tol * std::abs(total),
                                  50.0 * eps * total_scale});
        if (total_err <= target) break;
        if (evals + 2 * kKronrod > opts.max_evaluations) {
            QuadResult best{total, total_err, evals};
            if (!finite(total))
                throw std::domain_error("quad_finite: integrand produced a non-finite value");
            throw QuadBudgetError("quad_finite: subdivision budget exhausted", best);
        }
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // interval no longer splittable in double precision; accept it
            total_err -= worst.err;
            continue;
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        evals += 2 * kKronrod;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        total_scale += left.resasc + right.resasc - worst.resasc;
        heap.push(left);
        heap.push(right);
    }
    if (!finite(total))
        throw std::domain_error("quad_finite: integrand produced a non-finite value");
    return {total, total_err, evals};
}

QuadResult quad_semi_infinite(const Integrand& f, double a, double tol,
                              double decay_hint, QuadOptions opts) {
    if (!(tol > 0)) throw std::invalid_argument("quad_semi_infinite: requires tol > 0");

    if (decay_hint < -1.0) {
        // Algebraic tail |f| ~ s^p with p < -1: compactify s = a + (1-t)/t.
        Integrand g = [&f, a](double t) -> Cplx {
            if (t <= 0.0) return {0.0, 0.0};
            double s = a + (1.0 - t) / t;
            return f(s) / (t * t);
        };
        return quad_finite(g, 0.0, 1.0, tol, opts);
    }
    if (!(decay_hint > 0))
        throw std::invalid_argument(
            "quad_semi_infinite: decay hint must be a positive exponential rate "
            "or an algebraic exponent < -1");

    const double rate = decay_hint;
    // Probe the exponential envelope |f(s)| <= M exp(-rate (s-a)).
    const int n_probe = 24;
    const double probe_span = 40.0 / rate;
    double m_hat = 0.0, m_first = 0.0, m_second = 0.0;
    long evals = 0;
    for (int i = 0; i < n_probe; ++i) {
        double s = a + probe_span * (i + 0.5) / n_probe;
        double scaled = std::abs(f(s)) * std::exp(rate * (s - a));
        ++evals;
        if (!std::isfinite(scaled) && i >= n_probe / 2) {
            throw std::domain_error(
                "quad_semi_infinite: decay hint inconsistent with observed samples "
                "(scaled envelope overflow)");
        }
        m_hat = std::max(m_hat, scaled);
        (i < n_probe / 2 ? m_first : m_second) = std::max(i < n_probe / 2 ? m_first : m_second, scaled);
    }
    if (m_second > 100.0 * (m_first + std::numeric_limits<double>::min()))
        throw std::domain_error(
            "quad_semi_infinite: decay hint inconsistent with observed samples "
            "(integrand decays slower than the stated rate)");
    if (m_hat == 0.0) return {Cplx{0.0, 0.0}, 0.0, evals};

    // Truncation point: envelope tail M exp(-rate (R-a)) / rate below tol/4,
    // then enforce the realized bound 2 |f(R)| / rate <= tol/2.
    double r_star = a + std::max(probe_span, std::log(4.0 * m_hat / (rate * tol)) / rate);
    double tail_bound = 2.0 * std::abs(f(r_star)) / rate;
    ++evals;
    int extensions = 0;
    while (tail_bound > 0.5 * tol && extensions < 60) {
        r_star = a + (r_star - a) * 1.5;
        tail_bound = 2.0 * std::abs(f(r_star)) / rate;
        ++evals;
        ++extensions;
    }

    QuadResult core = quad_finite(f, a, r_star, 0.5 * tol, opts);
    core.abs_err += tail_bound;
    core.evaluations += evals;
    return core;
}

// ---------------------------------------------------------------------------
// contours

ContourSegment ContourSegment::line(Cplx a, Cplx b) {
    ContourSegment s;
    s.kind = Kind::line;
    s.z0 = a;
    s.z1 = b;
    return s;
}

ContourSegment ContourSegment::arc(Cplx center, double radius, double theta0,
                                   double theta1) {
    ContourSegment s;
    s.kind = Kind::arc;
    s.center = center;
    s.radius = radius;
    s.theta0 = theta0;
    s.theta1 = theta1;
    return s;
}

Cplx ContourSegment::point(double t) const {
    if (kind == Kind::line) return z0 + t * (z1 - z0);
    double th = theta0 + t * (theta1 - theta0);
    return center + radius * Cplx{std::cos(th), std::sin(th)};
}

Cplx ContourSegment::derivative(double t) const {
    if (kind == Kind::line) return z1 - z0;
    double th = theta0 + t * (theta1 - theta0);
    return radius * (theta1 - theta0) * Cplx{-std::sin(th), std::cos(th)};
}

void ContourSpec::validate() const {
    if (segments.empty())
        throw std::invalid_argument("contour: no segments");
    for (size_t i = 0; i + 1 < segments.size(); ++i) {
        if (std::abs(segments[i].end() - segments[i + 1].start()) > 1e-12)
            throw std::invalid_argument("contour: discontinuity between segments " +
                                        std::to_string(i) + " and " + std::to_string(i + 1));
    }
    if (closed &&
        std::abs(segments.back().end() - segments.front().start()) > 1e-12)
        throw std::invalid_argument("contour: closed path does not end where it starts");
}

ContourSpec ContourSpec::reversed() const {
    ContourSpec r;
    r.closed = closed;
    r.counterclockwise = !counterclockwise;
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
        ContourSegment s = *it;
        if (s.kind == ContourSegment::Kind::line)
            std::swap(s.z0, s.z1);
        else
            std::swap(s.theta0, s.theta1);
        r.segments.push_back(s);
    }
    return r;
}

ContourSpec ContourSpec::circle(Cplx center, double radius) {
    ContourSpec c;
    c.closed = true;
    c.counterclockwise = true;
    c.segments.push_back(ContourSegment::arc(center, radius, 0.0, M_PI));
    c.segments.push_back(ContourSegment::arc(center, radius, M_PI, 2.0 * M_PI));
    return c;
}

ContourSpec ContourSpec::annular_sector(double r_inner, double r_outer,
                                        double theta_lo, double theta_hi) {
    if (!(0 < r_inner && r_inner < r_outer && theta_lo < theta_hi))
        throw std::invalid_argument("annular_sector: malformed cell bounds");
    ContourSpec c;
    c.closed = true;
    c.counterclockwise = true;
    Cplx o{0, 0};
    auto polar = [](double r, double th) { return r * Cplx{std::cos(th), std::sin(th)}; };
    c.segments.push_back(ContourSegment::line(polar(r_inner, theta_lo), polar(r_outer, theta_lo)));
    c.segments.push_back(ContourSegment::arc(o, r_outer, theta_lo, theta_hi));
    c.segments.push_back(ContourSegment::line(polar(r_outer, theta_hi), polar(r_inner, theta_hi)));
    c.segments.push_back(ContourSegment::arc(o, r_inner, theta_hi, theta_lo));
    return c;
}

QuadResult quad_contour(const PathFunction& f, const ContourSpec& path,
                        double tol, QuadOptions opts) {
    path.validate();
    QuadResult total;
    double seg_tol = tol / static_cast<double>(path.segments.size());
    for (const auto& seg : path.segments) {
        Integrand g = [&f, &seg](double t) { return f(seg.point(t)) * seg.derivative(t); };
        QuadResult r = quad_finite(g, 0.0, 1.0, seg_tol, opts);
        total.value += r.value;
        total.abs_err += r.abs_err;
        total.evaluations += r.evaluations;
    }
    return total;
}

} // namespace diskflow
