#include <catch2/catch_amalgamated.hpp>

#include "theta13/theta13.hpp"

#include <cmath>

using namespace theta13;

namespace {
const SiegelMatrix kZ = make_siegel(cdouble(0.2, 1.1), cdouble(0.1, 0.3), cdouble(-0.4, 1.7));
const cvec2 kV0 = {cdouble(0.1, 0.2), cdouble(-0.3, 0.1)};
}

TEST_CASE("reference value at the identity period matrix") {
    // theta[0,0](0; iI) = (sum_n exp(-pi n^2))^2, an independently frozen
    // constant.
    SiegelMatrix z = make_siegel(cdouble(0, 1), cdouble(0, 0), cdouble(0, 1));
    ThetaValue t = classical_theta(z, RealCharacteristic{}, cvec2{}, 1e-12);
    CHECK(t.value.real() == Catch::Approx(1.1803405990160962).epsilon(1e-14));
    CHECK(std::abs(t.value.imag()) < 1e-14);
    CHECK(t.tail_bound <= 1e-12);
    CHECK(t.radius_used <= 5);
}

TEST_CASE("frozen values on a generic period matrix") {
    // Reference values computed with an independent exhaustive summation
    // (square box, radius 40, compensated accumulation).
    ThetaValue a = classical_theta(kZ, RealCharacteristic{}, kV0, 1e-13);
    CHECK(a.value.real() == Catch::Approx(1.1170917705103156).epsilon(1e-12));
    CHECK(a.value.imag() == Catch::Approx(0.015579149168447423).epsilon(1e-10));

    RealCharacteristic cw{{0.0, 1.0 / 3.0}, {0.0, 0.0}};
    ThetaValue b = classical_theta(kZ, cw, kV0, 1e-13);
    CHECK(b.value.real() == Catch::Approx(0.48666860325746769).epsilon(1e-12));
    CHECK(b.value.imag() == Catch::Approx(-0.28751527436807495).epsilon(1e-12));

    RealCharacteristic chh{{0.5, 0.0}, {0.0, 0.5}};
    ThetaValue c = classical_theta(kZ, chh, kV0, 1e-13);
    CHECK(c.value.real() == Catch::Approx(0.9823967666184974).epsilon(1e-12));
    CHECK(c.value.imag() == Catch::Approx(-0.02808943221981142).epsilon(1e-10));
}

TEST_CASE("truncation radius shrinks with looser eps and certifies its tail") {
    rvec2 c1 = {0.0, 1.0 / 3.0};
    int r12 = truncation_radius(kZ, c1, kV0, 1e-12);
    int r6 = truncation_radius(kZ, c1, kV0, 1e-6);
    int r3 = truncation_radius(kZ, c1, kV0, 1e-3);
    CHECK(r3 <= r6);
    CHECK(r6 <= r12);
    CHECK(r12 >= 2);

    // Minimality: the certified tail at r is within eps, at r-1 it is not.
    const double lam = kZ.lambda_min;
    // beta for this v/c1 combination is what the radius routine used
    // internally; recover the certificate through the public tail estimate
    // with beta = 0 as a lower bound and check monotonicity instead.
    double t_r = detail::tail_estimate(lam, 0.0, r12, 0);
    double t_rm = detail::tail_estimate(lam, 0.0, r12 - 1, 0);
    CHECK(t_r < t_rm);
    CHECK(t_r <= 1e-12);
}

TEST_CASE("tail bound is honest against a sharper evaluation") {
    Rng rng(2024);
    for (int i = 0; i < 20; ++i) {
        cvec2 v = {cdouble(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                   cdouble(rng.uniform(-1, 1), rng.uniform(-1, 1))};
        ThetaValue loose = classical_theta(kZ, RealCharacteristic{}, v, 1e-6);
        ThetaValue sharp = classical_theta(kZ, RealCharacteristic{}, v, 1e-14);
        CHECK(std::abs(loose.value - sharp.value) <= loose.tail_bound + sharp.tail_bound);
        CHECK(loose.tail_bound > 0.0);
    }
}

TEST_CASE("tail bound scales with the reduction multiplier") {
    // Far from the fundamental cell the periodicity multiplier is huge and
    // the certified bound must grow accordingly (relative accuracy, not
    // absolute).
    cvec2 far = from_real_coords(kZ, rvec2{5.2, -3.4}, rvec2{2.7, 4.1});
    ThetaValue t = classical_theta(kZ, RealCharacteristic{}, far, 1e-12);
    CHECK(std::abs(t.value) > 1.0);  // multiplier-dominated
    CHECK(t.tail_bound >= 1e-12);
    CHECK(t.tail_bound <= 1e-10 * std::abs(t.value));
}

TEST_CASE("requests beyond achievable precision are rejected") {
    // A nearly degenerate imaginary part forces an astronomically large
    // truncation radius; the evaluator must refuse rather than loop.
    SiegelMatrix thin = make_siegel(cdouble(0.0, 1e-8), cdouble(0.0, 0.0), cdouble(0.0, 1.0));
    CHECK_THROWS_AS(classical_theta(thin, RealCharacteristic{}, cvec2{}, 1e-12), EpsTooSmall);
}

TEST_CASE("even characteristic gives an even function") {
    Rng rng(515);
    for (int i = 0; i < 15; ++i) {
        cvec2 v = {cdouble(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                   cdouble(rng.uniform(-1, 1), rng.uniform(-1, 1))};
        ThetaValue p = classical_theta(kZ, RealCharacteristic{}, v, 1e-12);
        ThetaValue m = classical_theta(kZ, RealCharacteristic{}, -v, 1e-12);
        CHECK(std::abs(p.value - m.value) <= 2.0 * (p.tail_bound + m.tail_bound) + 1e-13);
    }
}

TEST_CASE("quasi periodicity across all eight lattice basis vectors") {
    const std::array<std::pair<rvec2, rvec2>, 8> basis = {{
        {{1.0, 0.0}, {0.0, 0.0}},
        {{0.0, 1.0}, {0.0, 0.0}},
        {{0.0, 0.0}, {1.0, 0.0}},
        {{0.0, 0.0}, {0.0, 1.0}},
        {{-1.0, 0.0}, {0.0, 0.0}},
        {{0.0, -1.0}, {0.0, 0.0}},
        {{0.0, 0.0}, {-1.0, 0.0}},
        {{0.0, 0.0}, {0.0, -1.0}},
    }};
    Rng rng(909);
    RealCharacteristic cw{{0.0, 1.0 / 3.0}, {0.0, 0.0}};
    for (const auto& [m, n] : basis) {
        cvec2 lam = from_real_coords(kZ, m, n);
        for (int i = 0; i < 6; ++i) {
            cvec2 v = {cdouble(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                       cdouble(rng.uniform(-1, 1), rng.uniform(-1, 1))};
            CHECK(quasiperiodicity_residual(kZ, RealCharacteristic{}, lam, v) < 1e-11);
            CHECK(quasiperiodicity_residual(kZ, cw, lam, v) < 1e-11);
        }
    }
}

TEST_CASE("quasi periodicity rejects non lattice vectors") {
    cvec2 bad = from_real_coords(kZ, rvec2{0.5, 0.0}, rvec2{0.0, 0.0});
    CHECK_THROWS_AS(quasiperiodicity_residual(kZ, RealCharacteristic{}, bad, cvec2{}),
                    NotLatticeVector);
}

TEST_CASE("analytic gradient matches finite differences") {
    Rng rng(31007);
    RealCharacteristic cw{{0.0, -1.0 / 3.0}, {0.0, 0.0}};
    for (int i = 0; i < 10; ++i) {
        cvec2 v = {cdouble(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                   cdouble(rng.uniform(-1, 1), rng.uniform(-1, 1))};
        auto g = classical_theta_gradient(kZ, cw, v, 1e-13);
        cvec2 fd = fd_gradient(kZ, cw, v, 1e-5, 24);
        double scale = std::max({std::abs(g[0].value), std::abs(g[1].value), 1.0});
        CHECK(std::abs(g[0].value - fd[0]) / scale < 1e-6);
        CHECK(std::abs(g[1].value - fd[1]) / scale < 1e-6);
    }
}

TEST_CASE("gradient of the combined evaluation matches the component calls") {
    ThetaWithGradient wg =
        classical_theta_with_gradient(kZ, RealCharacteristic{{0.0, 1.0 / 3.0}, {0.0, 0.0}}, kV0, 1e-12);
    ThetaValue plain =
        classical_theta(kZ, RealCharacteristic{{0.0, 1.0 / 3.0}, {0.0, 0.0}}, kV0, 1e-12);
    auto grad =
        classical_theta_gradient(kZ, RealCharacteristic{{0.0, 1.0 / 3.0}, {0.0, 0.0}}, kV0, 1e-12);
    CHECK(std::abs(wg.value.value - plain.value) < 1e-12);
    CHECK(std::abs(wg.gradient[0].value - grad[0].value) < 1e-11);
    CHECK(std::abs(wg.gradient[1].value - grad[1].value) < 1e-11);
}
