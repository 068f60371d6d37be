#include "diskflow/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace diskflow {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606065;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// zeta(k) for k = 2..60 (index by k).
constexpr double kZeta[61] = {
    0.0, 0.0,
    1.6449340668482264365,
    1.2020569031595942854,
    1.0823232337111381915,
    1.0369277551433699263,
    1.0173430619844491397,
    1.0083492773819228268,
    1.0040773561979443394,
    1.0020083928260822144,
    1.0009945751278180853,
    1.0004941886041194646,
    1.0002460865533080483,
    1.0001227133475784891,
    1.0000612481350587048,
    1.0000305882363070205,
    1.0000152822594086519,
    1.0000076371976378998,
    1.0000038172932649998,
    1.0000019082127165539,
    1.0000009539620338728,
    1.0000004769329867878,
    1.0000002384505027277,
    1.0000001192199259653,
    1.0000000596081890513,
    1.0000000298035035147,
    1.0000000149015548284,
    1.0000000074507117898,
    1.0000000037253340248,
    1.0000000018626597235,
    1.0000000009313274324,
    1.0000000004656629065,
    1.0000000002328311834,
    1.0000000001164155017,
    1.0000000000582077209,
    1.0000000000291038504,
    1.0000000000145519219,
    1.0000000000072759598,
    1.0000000000036379795,
    1.0000000000018189897,
    1.0000000000009094948,
    1.0000000000004547474,
    1.0000000000002273737,
    1.0000000000001136868,
    1.0000000000000568434,
    1.0000000000000284217,
    1.0000000000000142109,
    1.0000000000000071054,
    1.0000000000000035527,
    1.0000000000000017764,
    1.0000000000000008882,
    1.0000000000000004441,
    1.0000000000000002220,
    1.0000000000000001110,
    1.0000000000000000555,
    1.0000000000000000278,
    1.0000000000000000139,
    1.0000000000000000069,
    1.0000000000000000035,
    1.0000000000000000017,
    1.0000000000000000009,
};

// Lanczos coefficients, g = 607/128, 15 terms (Godfrey's set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool is_nonpositive_integer(Cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// sin(pi z) with exact integer reduction: sin(pi z) = (-1)^m sin(pi (z - m)).
Cplx sin_pi(Cplx z) {
    double m = std::round(z.real());
    Cplx s = std::sin(M_PI * (z - m));
    bool odd = std::fmod(std::abs(m), 2.0) == 1.0;
    return odd ? -s : s;
}

Cplx gamma_lanczos(Cplx z) {
    // valid for Re z >= 0.5
    Cplx w = z - 1.0;
    Cplx acc = kLanczos[0];
    for (int k = 1; k < 15; ++k) acc += kLanczos[k] / (w + double(k));
    Cplx t = w + kLanczosG + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, w + 0.5) * std::exp(-t) * acc;
}

} // namespace

Cplx gamma_c(Cplx z) {
    if (is_nonpositive_integer(z))
        throw std::domain_error("gamma_c: pole at a nonpositive integer");
    if (z.real() >= 0.5) return gamma_lanczos(z);
    // reflection through Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return M_PI / (sin_pi(z) * gamma_lanczos(1.0 - z));
}

ComplexResult log_gamma_taylor(Cplx z, int terms) {
    double r = std::abs(z);
    if (r > 0.5)
        throw std::domain_error("log_gamma_taylor: requires |z| <= 0.5");
    if (terms < 2 || terms > 60)
        throw std::invalid_argument("log_gamma_taylor: terms must lie in [2, 60]");
    Cplx mz = -z;
    Cplx sum = kEulerGamma * mz;
    Cplx p = mz;
    for (int k = 2; k <= terms; ++k) {
        p *= mz;
        sum += kZeta[k] / double(k) * p;
    }
    double bound = (r < 1.0) ? std::pow(r, terms + 1) / (1.0 - r) : INFINITY;
    return {sum, bound};
}

// ---------------------------------------------------------------------------
// modified Bessel kernels

BesselOrder::BesselOrder(Cplx mu_) : mu(mu_) {
    if (mu.real() < 0.0)
        throw std::domain_error("BesselOrder: requires Re(mu) >= 0");
    double nearest = std::round(mu.real());
    dist_to_integer = std::abs(mu - nearest);
    near_integer = dist_to_integer < 1e-3;
}

namespace {

struct KernelValue {
    Cplx scaled{0.0, 0.0}; // value times exp(-Re z) for I, exp(+Re z) for K
    double rel_err = 0.0;
};

// Power series for I: I_mu(z) = (z/2)^mu / Gamma(mu+1) * sum_m q^m / (m! (mu+1)_m),
// q = (z/2)^2. Returns the unscaled value (safe: series zone keeps |z| <= 30).
KernelValue i_series_unscaled(Cplx mu, Cplx z, double tol) {
    Cplx half = 0.5 * z;
    Cplx pref = std::exp(mu * std::log(half)) / gamma_c(mu + 1.0);
    Cplx q = half * half;
    Cplx term{1.0, 0.0};
    Cplx sum = term;
    double absum = 1.0;
    int m = 0;
    double ratio = 1.0;
    for (; m < 500; ++m) {
        term *= q / (double(m + 1) * (mu + double(m + 1)));
        sum += term;
        absum += std::abs(term);
        ratio = std::abs(q) / (double(m + 2) * std::abs(mu + double(m + 2)));
        if (std::abs(term) <= tol * std::abs(sum) && m >= 3 && ratio < 0.5) break;
    }
    double tail = std::abs(term) * ratio / std::max(1e-30, 1.0 - ratio);
    double cancel = absum / std::max(std::abs(sum), 1e-300);
    KernelValue kv;
    kv.scaled = pref * sum; // caller rescales
    kv.rel_err = tail / std::max(std::abs(sum), 1e-300) + kEps * (m + 4) * cancel;
    return kv;
}

// Large-argument expansions. S_plus = sum a_k / z^k, S_minus = sum (-1)^k a_k / z^k,
// a_k = prod_{j=1..k} (4 mu^2 - (2j-1)^2) / (8 k!).
void asymptotic_sums(Cplx mu, Cplx z, Cplx& s_plus, Cplx& s_minus, double& rel_err) {
    Cplx mu2 = 4.0 * mu * mu;
    Cplx term{1.0, 0.0};
    s_plus = term;
    s_minus = term;
    double best = INFINITY;
    rel_err = INFINITY;
    for (int k = 1; k <= 40; ++k) {
        double odd = 2.0 * k - 1.0;
        term *= (mu2 - odd * odd) / (8.0 * double(k) * z);
        double mag = std::abs(term);
        if (mag >= best) { rel_err = best; break; } // divergent tail reached
        best = mag;
        s_plus += term;
        s_minus += (k % 2 == 0) ? term : -term;
        rel_err = mag;
    }
    rel_err = rel_err / std::max(std::abs(s_plus), 1e-300) + 40.0 * kEps;
}

KernelValue k_asymptotic_scaled(Cplx mu, Cplx z) {
    Cplx sp, sm;
    double err;
    asymptotic_sums(mu, z, sp, sm, err);
    KernelValue kv;
    kv.scaled = std::sqrt(M_PI / (2.0 * z)) * std::exp(Cplx{0.0, -z.imag()}) * sp;
    kv.rel_err = err;
    return kv;
}

KernelValue i_asymptotic_scaled(Cplx mu, Cplx z) {
    Cplx sp, sm;
    double err;
    asymptotic_sums(mu, z, sp, sm, err);
    double sigma = (z.imag() >= 0.0) ? 1.0 : -1.0;
    Cplx phase = std::exp(Cplx{0.0, sigma * M_PI} * (mu + 0.5));
    Cplx second = std::exp(Cplx{-2.0 * z.real(), -z.imag()}) * phase * sp;
    Cplx first = std::exp(Cplx{0.0, z.imag()}) * sm;
    KernelValue kv;
    kv.scaled = (first + second) / std::sqrt(2.0 * M_PI * z);
    kv.rel_err = err;
    return kv;
}

bool use_asymptotic(Cplx z) {
    double az = std::abs(z);
    if (az > 30.0) return true;
    // heavy series cancellation near the imaginary axis
    return az >= 10.0 && (az - z.real()) > 9.0;
}

// The connection formula loses exp(|z| + Re z)/|sin(mu pi)| digits to
// cancellation, and that loss shows up as rounding noise that stalls
// adaptive quadrature. The expansion is smooth and already accurate at
// moderate |z|, so K switches branches early.
bool k_use_asymptotic(Cplx z) { return std::abs(z) >= 10.0; }

KernelValue i_scaled_impl(Cplx mu, Cplx z, double tol) {
    if (use_asymptotic(z)) return i_asymptotic_scaled(mu, z);
    KernelValue kv = i_series_unscaled(mu, z, tol);
    kv.scaled *= std::exp(-z.real());
    return kv;
}

// K by the connection formula; series zone only. rel_err tracks the
// exp(2 Re z)-type cancellation between I_{-mu} and I_mu.
KernelValue k_connection_scaled(Cplx mu, Cplx z, double tol) {
    KernelValue im = i_series_unscaled(-mu, z, tol);
    KernelValue ip = i_series_unscaled(mu, z, tol);
    Cplx s = sin_pi(mu);
    Cplx diff = im.scaled - ip.scaled;
    Cplx val = 0.5 * M_PI * diff / s;
    double abs_err = 0.5 * M_PI / std::abs(s) *
                     (std::abs(im.scaled) * (im.rel_err + kEps) +
                      std::abs(ip.scaled) * (ip.rel_err + kEps));
    KernelValue kv;
    kv.scaled = val * std::exp(z.real());
    kv.rel_err = abs_err / std::max(std::abs(val), 1e-300);
    return kv;
}

KernelValue k_integral_scaled(Cplx mu, Cplx z, double tol) {
    if (z.real() <= 0.0)
        throw std::domain_error(
            "bessel_k: integral representation requires Re z > 0 "
            "(method failure for this order/argument combination)");
    // K_mu(z) = 1/2 int_0^inf exp(-z/2 (t + 1/t)) t^{-mu-1} dt, folded onto
    // [1, inf): 1/2 int_1^inf exp(-z/2 (t + 1/t)) (t^{mu-1} + t^{-mu-1}) dt.
    // Scaled by exp(+Re z); the exponent real part is then nonpositive.
    double re = z.real();
    auto f = [mu, z, re](double t) -> Cplx {
        double u = t + 1.0 / t;
        Cplx expo = Cplx{re, 0.0} - 0.5 * z * u;
        Cplx powers = std::pow(t, mu - 1.0) + std::pow(t, -mu - 1.0);
        return 0.5 * std::exp(expo) * powers;
    };
    QuadResult q = quad_semi_infinite(f, 1.0, tol, 0.5 * re);
    KernelValue kv;
    kv.scaled = q.value;
    kv.rel_err = q.abs_err / std::max(std::abs(q.value), 1e-300);
    return kv;
}

KernelValue k_scaled_impl(Cplx mu, Cplx z, double tol) {
    if (k_use_asymptotic(z)) return k_asymptotic_scaled(mu, z);
    double nearest = std::round(mu.real());
    bool near_int = (mu.imag() == 0.0 || std::abs(mu.imag()) < 1e-3) &&
                    std::abs(mu - nearest) < 1e-3;
    if (std::abs(sin_pi(mu)) > 1e-3 && !near_int) return k_connection_scaled(mu, z, tol);
    return k_integral_scaled(mu, z, std::max(tol, 1e-13));
}

void require_off_cut(Cplx z, const char* who) {
    if (on_negative_real_axis(z))
        throw std::domain_error(std::string(who) + ": argument on the branch cut (-inf, 0]");
}

} // namespace

Cplx bessel_i_scaled(Cplx mu, Cplx z) {
    require_off_cut(z, "bessel_i_scaled");
    return i_scaled_impl(mu, z, 1e-15).scaled;
}

Cplx bessel_k_scaled(Cplx mu, Cplx z) {
    require_off_cut(z, "bessel_k_scaled");
    return k_scaled_impl(mu, z, 1e-15).scaled;
}

ComplexResult bessel_i(const BesselOrder& order, Cplx z, double tol) {
    require_off_cut(z, "bessel_i");
    if (std::abs(z) > 200.0)
        throw std::range_error("bessel_i: |z| beyond the supported desk-scale window (200)");
    KernelValue kv = i_scaled_impl(order.mu, z, tol);
    Cplx value = kv.scaled * std::exp(z.real());
    return {value, kv.rel_err * std::abs(value)};
}

ComplexResult bessel_k(const BesselOrder& order, Cplx z, double tol) {
    require_off_cut(z, "bessel_k");
    if (z.real() > 705.0) {
        // the kernel underflows to zero long before this point
        return {Cplx{0.0, 0.0}, std::numeric_limits<double>::min()};
    }
    KernelValue kv;
    if (k_use_asymptotic(z)) {
        kv = k_asymptotic_scaled(order.mu, z);
    } else if (!order.near_integer) {
        kv = k_connection_scaled(order.mu, z, tol);
    } else {
        kv = k_integral_scaled(order.mu, z, std::max(tol, 1e-13));
    }
    Cplx value = kv.scaled * std::exp(-z.real());
    return {value, kv.rel_err * std::abs(value)};
}

ComplexResult bessel_k_connection(const BesselOrder& order, Cplx z, double tol) {
    require_off_cut(z, "bessel_k_connection");
    if (std::abs(sin_pi(order.mu)) <= 1e-3)
        throw std::domain_error("bessel_k_connection: order too close to an integer");
    KernelValue kv = k_connection_scaled(order.mu, z, tol);
    Cplx value = kv.scaled * std::exp(-z.real());
    return {value, kv.rel_err * std::abs(value)};
}

ComplexResult bessel_k_integral(const BesselOrder& order, Cplx z, double tol) {
    require_off_cut(z, "bessel_k_integral");
    KernelValue kv = k_integral_scaled(order.mu, z, tol);
    Cplx value = kv.scaled * std::exp(-z.real());
    return {value, kv.rel_err * std::abs(value)};
}

Cplx bessel_k_deriv_scaled(Cplx mu, Cplx z) {
    return -(mu / z) * bessel_k_scaled(mu, z) - bessel_k_scaled(mu - 1.0, z);
}

Cplx bessel_i_deriv_scaled(Cplx mu, Cplx z) {
    return bessel_i_scaled(mu - 1.0, z) - (mu / z) * bessel_i_scaled(mu, z);
}

Cplx bessel_k_deriv(Cplx mu, Cplx z) {
    return bessel_k_deriv_scaled(mu, z) * std::exp(-z.real());
}

Cplx bessel_i_deriv(Cplx mu, Cplx z) {
    return bessel_i_deriv_scaled(mu, z) * std::exp(z.real());
}

double wronskian_defect(const BesselOrder& order, Cplx z) {
    require_off_cut(z, "wronskian_defect");
    Cplx mu = order.mu;
    // scaled products: the exp(+-Re z) factors cancel pairwise
    Cplx kt = bessel_k_scaled(mu, z);
    Cplx it = bessel_i_scaled(mu, z);
    Cplx ktp = bessel_k_deriv_scaled(mu, z);
    Cplx itp = bessel_i_deriv_scaled(mu, z);
    Cplx w = z * (kt * itp - ktp * it);
    return std::abs(w - 1.0);
}

// ---------------------------------------------------------------------------
// empirical bound margins

namespace {

struct MarginAccumulator {
    double sup_ratio = 0.0;
    Cplx worst{0.0, 0.0};
    long samples = 0;
    void feed(double ratio, Cplx where) {
        ++samples;
        if (std::isfinite(ratio) && ratio > sup_ratio) {
            sup_ratio = ratio;
            worst = where;
        }
    }
};

std::vector<Cplx> sector_samples(const SectorGrid& grid, double half_angle) {
    if (grid.n_radial < 1 || grid.n_angular < 1)
        throw std::invalid_argument("bessel_bound_margin: empty sample grid");
    if (!(grid.r_min > 0.0 && grid.r_min < grid.r_max))
        throw std::invalid_argument("bessel_bound_margin: malformed radial window");
    std::vector<Cplx> out;
    for (int i = 0; i < grid.n_radial; ++i) {
        double f = grid.n_radial == 1 ? 0.5 : double(i) / (grid.n_radial - 1);
        double r = grid.r_min * std::pow(grid.r_max / grid.r_min, f);
        for (int j = 0; j < grid.n_angular; ++j) {
            double g = grid.n_angular == 1 ? 0.5 : double(j) / (grid.n_angular - 1);
            double th = -half_angle + 2.0 * half_angle * g;
            out.push_back(r * Cplx{std::cos(th), std::sin(th)});
        }
    }
    return out;
}

double abs_k(Cplx mu, Cplx z) { return std::abs(bessel_k_scaled(mu, z)) * std::exp(-z.real()); }
double abs_i_scaled(Cplx mu, Cplx z) { return std::abs(bessel_i_scaled(mu, z)); }

BoundMarginReport margin_envelope(const FlowParams& params, double eps,
                                  const SectorGrid& grid) {
    Cplx mu = mode_order(params, 1);
    const double m_split = 1.0;
    MarginAccumulator acc;
    // small |z|: |K| vs |z|^{-Re mu}, |I| vs |z|^{Re mu} inside the right half plane
    SectorGrid small = grid;
    small.r_max = std::min(grid.r_max, 0.95 * m_split);
    for (Cplx z : sector_samples(small, M_PI / 2 - 1e-6)) {
        acc.feed(abs_k(mu, z) / std::pow(std::abs(z), -mu.real()), z);
        acc.feed(std::abs(bessel_i_scaled(mu, z)) * std::exp(z.real()) /
                     std::pow(std::abs(z), mu.real()),
                 z);
    }
    // large |z|: |K| vs |z|^{-1/2} e^{-Re z}; |I| vs |z|^{-1/2} e^{Re z} with margin eps
    SectorGrid big = grid;
    big.r_min = m_split;
    big.r_max = 40.0;
    for (Cplx z : sector_samples(big, M_PI / 2 - eps)) {
        acc.feed(std::abs(bessel_k_scaled(mu, z)) * std::sqrt(std::abs(z)), z);
        acc.feed(abs_i_scaled(mu, z) * std::sqrt(std::abs(z)), z);
    }
    return {"kernel-envelope", "sector |z| in [r_min, 40]", acc.sup_ratio, acc.worst,
            acc.samples};
}

// shared scan over lambda samples for the radial-moment families
template <typename ItemFn>
BoundMarginReport margin_moments(const char* id, const FlowParams& params, double eps,
                                 const SectorGrid& grid, ItemFn&& per_lambda) {
    if (params.alpha == 0.0 || params.delta < 0.0)
        throw std::domain_error(
            "bessel_bound_margin: moment scans require alpha != 0 and delta >= 0");
    MarginAccumulator acc;
    for (Cplx lam : sector_samples(grid, M_PI - eps)) {
        per_lambda(lam, acc);
    }
    return {id, "lambda sector grid", acc.sup_ratio, acc.worst, acc.samples};
}

// The margin scans compare against bounds with unnamed constants, so a
// relative 1e-8 quadrature target is ample and avoids chasing kernel
// rounding noise with the subdivision budget.
QuadOptions margin_quad_opts() {
    QuadOptions o;
    o.abs_tol = 1e-9;
    o.rel_tol = 1e-8;
    o.max_evaluations = 60000;
    return o;
}

double quad_abs_kernel(const std::function<double(double)>& g, double a, double b) {
    auto f = [&g](double s) { return Cplx{g(s), 0.0}; };
    return quad_finite(f, a, b, 1e-9, margin_quad_opts()).value.real();
}

double quad_abs_kernel_tail(const std::function<double(double)>& g, double a,
                            double rate) {
    auto f = [&g](double s) { return Cplx{g(s), 0.0}; };
    return quad_semi_infinite(f, a, 1e-9, rate, margin_quad_opts()).value.real();
}

} // namespace

BoundMarginReport bessel_bound_margin(KernelBound which, const FlowParams& params,
                                      double eps, const SectorGrid& grid) {
    if (which == KernelBound::envelope) return margin_envelope(params, eps, grid);

    Cplx xi = mode_order(params, 1);
    double rxi = xi.real();
    double d = params.delta;

    auto k_abs = [xi](int k, Cplx sl, double s) {
        return std::abs(bessel_k_scaled(xi - double(k), sl * s)) *
               std::exp(-(sl * s).real());
    };
    auto i_abs = [xi](int k, Cplx sl, double s) {
        // scaled magnitude suffices: bounds below carry the envelope explicitly
        return std::abs(bessel_i_scaled(xi + double(k), sl * s)) *
               std::exp((sl * s).real());
    };

    switch (which) {
    case KernelBound::radial_moment_k:
        return margin_moments("kernel-radial-moment-K", params, eps, grid,
                              [&](Cplx lam, MarginAccumulator& acc) {
            Cplx sl = std::sqrt(lam);
            double inv = 1.0 / sl.real();
            double alam = std::abs(lam);
            for (int k = 0; k <= 1; ++k) {
                auto f = [&](double s) { return std::pow(s, 2.0 - k - d / 2) * k_abs(k, sl, s); };
                // window inside [1, 1/Re sqrt(lambda)]
                if (inv > 2.0) {
                    double lhs = quad_abs_kernel(f, 1.0, 0.5 * inv);
                    double rhs = std::pow(alam, -rxi / 2 + k / 2.0) *
                                 std::pow(0.5 * inv, 3.0 - rxi - d / 2);
                    acc.feed(lhs / rhs, lam);
                }
                // window straddling 1/Re sqrt(lambda)
                if (inv > 1.0) {
                    double lhs = quad_abs_kernel(f, 1.0, 3.0 * inv);
                    double rhs = std::pow(alam, -1.5 + 0.5 * k + d / 4);
                    acc.feed(lhs / rhs, lam);
                }
                // window beyond 1/Re sqrt(lambda)
                {
                    double tau = std::max(1.0, 1.5 * inv);
                    double lhs = quad_abs_kernel(f, tau, tau * 3.0) +
                                 quad_abs_kernel_tail(f, tau * 3.0, sl.real());
                    double rhs = std::pow(alam, -0.75) *
                                 std::pow(tau, 1.5 - k - d / 2) * std::exp(-sl.real() * tau);
                    acc.feed(lhs / rhs, lam);
                }
                auto g = [&](double s) { return std::pow(s, -double(k) - d / 2) * k_abs(k, sl, s); };
                // decaying moments from tau below and above the turning scale
                if (inv > 2.0) {
                    double tau = 1.0;
                    double lhs = quad_abs_kernel(g, tau, inv) +
                                 quad_abs_kernel_tail(g, inv, sl.real());
                    double rhs = std::pow(alam, -rxi / 2 + 0.5 * k) *
                                 std::pow(tau, 1.0 - rxi - d / 2);
                    acc.feed(lhs / rhs, lam);
                }
                {
                    double tau = std::max(1.0, 1.5 * inv);
                    double lhs = quad_abs_kernel_tail(g, tau, sl.real());
                    double rhs = std::pow(alam, -0.75) *
                                 std::pow(tau, -0.5 - k - d / 2) * std::exp(-sl.real() * tau);
                    acc.feed(lhs / rhs, lam);
                }
            }
        });
    case KernelBound::radial_moment_i:
        return margin_moments("kernel-radial-moment-I", params, eps, grid,
                              [&](Cplx lam, MarginAccumulator& acc) {
            Cplx sl = std::sqrt(lam);
            double inv = 1.0 / sl.real();
            double alam = std::abs(lam);
            for (int k = 0; k <= 1; ++k) {
                auto f = [&](double s) { return std::pow(s, 2.0 - k - d / 2) * i_abs(k, sl, s); };
                if (inv > 2.0) {
                    double tau = 0.5 * inv;
                    double lhs = quad_abs_kernel(f, 1.0, tau);
                    double rhs = std::pow(alam, rxi / 2 + 0.5 * k) *
                                 std::pow(tau, 3.0 + rxi - d / 2);
                    acc.feed(lhs / rhs, lam);
                }
                {
                    double tau = std::max(2.0, 2.0 * inv);
                    double lhs = quad_abs_kernel(f, 1.0, tau);
                    double rhs = std::pow(alam, -0.75) *
                                 std::pow(tau, 1.5 - k - d / 2) * std::exp(sl.real() * tau);
                    acc.feed(lhs / rhs, lam);
                }
                auto g = [&](double s) { return std::pow(s, -double(k) - d / 2) * i_abs(k, sl, s); };
                if (inv > 2.0) {
                    double r = 1.0, tau = 0.5 * inv;
                    double lhs = quad_abs_kernel(g, r, tau);
                    double rhs = std::pow(alam, rxi / 2 + 0.5 * k) *
                                 std::pow(tau, 1.0 + rxi - d / 2);
                    acc.feed(lhs / rhs, lam);
                }
                {
                    double r = 1.0, tau = std::max(2.0, 2.0 * inv);
                    double lhs = quad_abs_kernel(g, r, tau);
                    double rhs = std::pow(alam, -0.75) *
                                 std::pow(tau, -0.5 - k - d / 2) * std::exp(sl.real() * tau);
                    acc.feed(lhs / rhs, lam);
                }
            }
        });
    case KernelBound::vorticity_moment:
        return margin_moments("kernel-vorticity-moment", params, eps, grid,
                              [&](Cplx lam, MarginAccumulator& acc) {
            Cplx sl = std::sqrt(lam);
            double inv = 1.0 / sl.real();
            double alam = std::abs(lam);
            auto fi = [&](double s) { return std::pow(s, 1.0 - d / 2) * i_abs(0, sl, s); };
            auto fk = [&](double s) { return std::pow(s, 1.0 - d / 2) * k_abs(0, sl, s); };
            if (inv > 2.0) {
                double tau = 0.5 * inv;
                acc.feed(quad_abs_kernel(fi, 1.0, tau) /
                             (std::pow(alam, rxi / 2) * std::pow(tau, 2.0 + rxi - d / 2)),
                         lam);
                double lhs = quad_abs_kernel(fk, tau, inv) +
                             quad_abs_kernel_tail(fk, inv, sl.real());
                double rhs = std::pow(alam, -rxi / 2 - 0.5) *
                                 std::pow(tau, 1.0 - rxi - d / 2) +
                             std::pow(alam, -1.0 + d / 4);
                acc.feed(lhs / rhs, lam);
            }
            {
                double tau = std::max(2.0, 2.0 * inv);
                acc.feed(quad_abs_kernel(fi, 1.0, tau) /
                             (std::pow(alam, -0.75) * std::pow(tau, 0.5 - d / 2) *
                              std::exp(sl.real() * tau)),
                         lam);
                acc.feed(quad_abs_kernel_tail(fk, tau, sl.real()) /
                             (std::pow(alam, -0.75) * std::pow(tau, 0.5 - d / 2) *
                              std::exp(-sl.real() * tau)),
                         lam);
            }
        });
    default:
        throw std::invalid_argument("bessel_bound_margin: unknown bound family");
    }
}

} // namespace diskflow
