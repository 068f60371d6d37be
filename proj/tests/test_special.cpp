#include <doctest.h>

#include <cmath>

#include "diskflow/special.hpp"

using namespace diskflow;

namespace {

// Independent oracle: Weierstrass product for 1/Gamma, with enough factors
// that the truncated tail correction keeps 1e-12 accuracy near |z| <= 2.
Cplx gamma_product_oracle(Cplx z) {
    const double euler = 0.5772156649015328606065;
    const int m_max = 200000;
    Cplx inv = z * std::exp(euler * z);
    Cplx log_rest{0.0, 0.0};
    for (int m = 1; m <= m_max; ++m) {
        Cplx w = z / double(m);
        log_rest += std::log(1.0 + w) - w;
    }
    // tail of sum_{m > M} [log(1+z/m) - z/m] ~ -z^2/2 sum m^{-2} ~ -z^2/(2M)
    log_rest += -z * z / (2.0 * double(m_max));
    inv *= std::exp(log_rest);
    return 1.0 / inv;
}

} // namespace

TEST_CASE("gamma_c on elementary values") {
    CHECK(std::abs(gamma_c({1.0, 0.0}) - 1.0) < 1e-14);
    CHECK(std::abs(gamma_c({5.0, 0.0}) - 24.0) < 24.0 * 1e-14);
    CHECK(std::abs(gamma_c({0.5, 0.0}) - std::sqrt(M_PI)) < 1e-14);
    // reflection path
    CHECK(std::abs(gamma_c({-0.5, 0.0}) - (-2.0 * std::sqrt(M_PI))) < 1e-13);
}

TEST_CASE("gamma_c at 1+i against the product-formula oracle") {
    Cplx got = gamma_c({1.0, 1.0});
    Cplx frozen{0.4980156681183560427, -0.1549498283018106851};
    CHECK(std::abs(got - frozen) < 1e-12);
    Cplx oracle = gamma_product_oracle({1.0, 1.0});
    CHECK(std::abs(got - oracle) < 1e-10);
}

TEST_CASE("gamma_c pole handling") {
    CHECK_THROWS_AS(gamma_c({0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(gamma_c({-3.0, 0.0}), std::domain_error);
}

TEST_CASE("log_gamma_taylor") {
    ComplexResult z0 = log_gamma_taylor({0.0, 0.0}, 30);
    CHECK(std::abs(z0.value) == 0.0);

    ComplexResult r = log_gamma_taylor({0.1, 0.0}, 40);
    CHECK(std::abs(r.value - (-0.04987244125983972415)) < 1e-13);
    CHECK(r.abs_err < 1e-12);

    // consistency with gamma_c at a complex point
    Cplx z{0.0, 0.2};
    ComplexResult lg = log_gamma_taylor(z, 50);
    CHECK(std::abs(std::exp(lg.value) - gamma_c(1.0 + z)) < 1e-10);

    CHECK_THROWS_AS(log_gamma_taylor({0.6, 0.0}, 40), std::domain_error);
    CHECK_THROWS_AS(log_gamma_taylor({0.1, 0.0}, 1), std::invalid_argument);
}

TEST_CASE("half-order closed forms") {
    BesselOrder half{{0.5, 0.0}};
    ComplexResult i = bessel_i(half, {1.0, 0.0});
    CHECK(std::abs(i.value - 0.9376748882454876467) < 1e-12);
    ComplexResult k = bessel_k(half, {1.0, 0.0});
    CHECK(std::abs(k.value - 0.4610685044478945584) < 1e-12);
}

TEST_CASE("small-z leading behavior of I") {
    BesselOrder mu{{1.2, 0.3}};
    for (double r : {1e-4, 1e-5}) {
        Cplx z{r, 0.5 * r};
        Cplx lead = std::exp(mu.mu * std::log(0.5 * z)) / gamma_c(mu.mu + 1.0);
        ComplexResult i = bessel_i(mu, z);
        CHECK(std::abs(i.value / lead - 1.0) < 1e-7);
    }
}

TEST_CASE("conjugation symmetry of I and K") {
    BesselOrder mu{{1.2, 0.3}};
    BesselOrder mu_bar{{1.2, -0.3}};
    Cplx z{0.5, 0.5};
    Cplx zb = std::conj(z);
    CHECK(std::abs(bessel_i(mu_bar, zb).value - std::conj(bessel_i(mu, z).value)) < 1e-10);
    CHECK(std::abs(bessel_k(mu_bar, zb).value - std::conj(bessel_k(mu, z).value)) < 1e-10);
}

TEST_CASE("connection-formula K agrees with integral-representation K") {
    for (Cplx mu : {Cplx{1.03, 0.05}, Cplx{0.7, -0.2}, Cplx{1.4, 0.0}}) {
        BesselOrder order{mu};
        for (Cplx z : {Cplx{0.3, 0.2}, Cplx{1.5, 1.0}, Cplx{4.0, -2.0}}) {
            ComplexResult a = bessel_k_connection(order, z);
            ComplexResult b = bessel_k_integral(order, z, 1e-13);
            CHECK(std::abs(a.value - b.value) <= a.abs_err + b.abs_err + 1e-13);
        }
    }
}

TEST_CASE("expansion branch of K agrees with the integral representation") {
    // just above the branch switch the expansion must carry full precision
    for (Cplx mu : {Cplx{1.03, 0.025}, Cplx{2.03, 0.025}}) {
        BesselOrder order{mu};
        for (double arg : {0.0, 0.7, 1.3}) {
            for (double az : {10.5, 16.0}) {
                Cplx z = az * Cplx{std::cos(arg), std::sin(arg)};
                ComplexResult a = bessel_k(order, z);
                ComplexResult b = bessel_k_integral(order, z, 1e-13);
                CHECK(std::abs(a.value - b.value) <=
                      std::abs(b.value) * 1e-7 + a.abs_err + b.abs_err);
            }
        }
    }
}

TEST_CASE("integer and near-integer orders route through the integral representation") {
    BesselOrder zero{{0.0, 0.0}};
    CHECK(zero.near_integer);
    // K_0(1) = 0.42102443824070833... (classical value)
    ComplexResult k0 = bessel_k(zero, {1.0, 0.0});
    CHECK(std::abs(k0.value - 0.4210244382407083334) < 1e-10);
    CHECK_THROWS_AS(bessel_k_connection(zero, {1.0, 0.0}), std::domain_error);
    // integral representation requires Re z > 0
    CHECK_THROWS_AS(bessel_k(zero, {-0.5, 0.8}), std::domain_error);
}

TEST_CASE("series and asymptotic branches join smoothly") {
    BesselOrder mu{{1.1, 0.4}};
    for (double arg : {0.0, 0.7, 1.3}) {
        Cplx z29 = 29.5 * Cplx{std::cos(arg), std::sin(arg)};
        Cplx z31 = 31.0 * Cplx{std::cos(arg), std::sin(arg)};
        ComplexResult a = bessel_i(mu, z29);
        ComplexResult b = bessel_i(mu, z31);
        // ratio should be close to exp(z31 - z29) within a few percent envelope;
        // the real check is that both are finite and the K side stays consistent
        CHECK(std::isfinite(std::abs(a.value)));
        CHECK(std::isfinite(std::abs(b.value)));
        ComplexResult ka = bessel_k(mu, {9.8, 1.0});
        ComplexResult kb = bessel_k(mu, {10.2, 1.0});
        CHECK(std::abs(ka.value / kb.value) > 1.0); // K decreasing in Re z
    }
}

TEST_CASE("range guard on bessel_i") {
    BesselOrder mu{{1.0, 0.2}};
    CHECK_THROWS_AS(bessel_i(mu, {210.0, 0.0}), std::range_error);
    CHECK_THROWS_AS(bessel_i(mu, {-1.0, 0.0}), std::domain_error);
}

TEST_CASE("Wronskian defect on the mode-order grid") {
    for (double alpha : {-0.1, -0.05, 0.02, 0.05, 0.1}) {
        for (double delta : {0.0, 0.025, 0.05, 0.075, 0.1}) {
            FlowParams p{alpha, delta};
            BesselOrder order{mode_order(p, 1)};
            for (int i = 0; i < 8; ++i) {
                double r = (i % 2 == 0) ? 0.7 : 2.2;
                double th = -1.2 + 0.6 * (i / 2);
                Cplx z = r * Cplx{std::cos(th), std::sin(th)};
                CHECK(wronskian_defect(order, z) < 1e-8);
            }
        }
    }
}

TEST_CASE("Wronskian defect at specific points") {
    FlowParams p{0.1, 0.0};
    CHECK(wronskian_defect(BesselOrder{mode_order(p, 1)}, {0.7, 0.3}) < 1e-8);
    CHECK(wronskian_defect(BesselOrder{{0.5, 0.0}}, {1.0, 0.0}) < 1e-10);
    CHECK(wronskian_defect(BesselOrder{{1.5, 0.5}}, {2.0, 0.0}) < 1e-8);
}

TEST_CASE("three-term recurrences close") {
    // z K_mu - (mu-1) K_{mu-1} + z K'_{mu-1} = 0, with the derivative taken
    // from the independent average form K' = -(K_{mu-2} + K_mu)/2.
    Cplx mu{2.3, 0.2};
    Cplx z{1.7, 0.9};
    BesselOrder o0{mu - 2.0}, o1{mu - 1.0}, o2{mu};
    Cplx km2 = bessel_k(o0, z).value;
    Cplx km1 = bessel_k(o1, z).value;
    Cplx k = bessel_k(o2, z).value;
    Cplx kprime_avg = -0.5 * (km2 + k);
    CHECK(std::abs(z * k - (mu - 1.0) * km1 + z * kprime_avg) < 1e-8);

    // z I_mu - (mu+1) I_{mu+1} - z I'_{mu+1} = 0, I' = (I_mu + I_{mu+2})/2.
    BesselOrder p0{mu}, p1{mu + 1.0}, p2{mu + 2.0};
    Cplx i0 = bessel_i(p0, z).value;
    Cplx i1 = bessel_i(p1, z).value;
    Cplx i2 = bessel_i(p2, z).value;
    Cplx iprime_avg = 0.5 * (i0 + i2);
    CHECK(std::abs(z * i0 - (mu + 1.0) * i1 - z * iprime_avg) < 1e-8);
}

TEST_CASE("bound margins are finite and refinement stable") {
    FlowParams p{0.05, 0.02};
    SectorGrid coarse{1e-3, 0.5, 4, 3};
    SectorGrid fine{1e-3, 0.5, 8, 5};

    SUBCASE("envelope family") {
        BoundMarginReport a = bessel_bound_margin(KernelBound::envelope, p, 0.1, coarse);
        BoundMarginReport b = bessel_bound_margin(KernelBound::envelope, p, 0.1, fine);
        CHECK(a.sup_ratio > 0.0);
        CHECK(std::isfinite(b.sup_ratio));
        CHECK(b.sup_ratio <= a.sup_ratio * 1.6 + 1.0); // no blowup under refinement
        CHECK(b.sup_ratio >= a.sup_ratio * 0.99);      // sup can only grow on a superset-like grid
    }
    SUBCASE("radial K moments") {
        SectorGrid g{1e-4, 0.3, 3, 3};
        BoundMarginReport r = bessel_bound_margin(KernelBound::radial_moment_k, p, 0.2, g);
        CHECK(r.sup_ratio > 0.0);
        CHECK(std::isfinite(r.sup_ratio));
    }
    SUBCASE("radial I moments") {
        SectorGrid g{1e-4, 0.3, 3, 3};
        BoundMarginReport r = bessel_bound_margin(KernelBound::radial_moment_i, p, 0.2, g);
        CHECK(r.sup_ratio > 0.0);
        CHECK(std::isfinite(r.sup_ratio));
    }
    SUBCASE("vorticity moments") {
        SectorGrid g{1e-4, 0.3, 3, 3};
        BoundMarginReport r = bessel_bound_margin(KernelBound::vorticity_moment, p, 0.2, g);
        CHECK(r.sup_ratio > 0.0);
        CHECK(std::isfinite(r.sup_ratio));
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(bessel_bound_margin(KernelBound::radial_moment_k,
                                            FlowParams{0.0, 0.02}, 0.2, coarse),
                        std::domain_error);
        CHECK_THROWS_AS(bessel_bound_margin(KernelBound::radial_moment_k,
                                            FlowParams{0.05, -0.02}, 0.2, coarse),
                        std::domain_error);
        SectorGrid empty{1e-3, 0.5, 0, 3};
        CHECK_THROWS_AS(bessel_bound_margin(KernelBound::envelope, p, 0.1, empty),
                        std::invalid_argument);
    }
}
