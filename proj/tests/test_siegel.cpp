#include <catch2/catch_amalgamated.hpp>

#include "theta13/theta13.hpp"

#include <cmath>

using namespace theta13;

TEST_CASE("polarization type and induced section count") {
    CHECK(kPolarization.d1 == 1);
    CHECK(kPolarization.d2 == 3);
    CHECK(genus_of_polarization(1, 3) == 4);
    CHECK(genus_of_polarization(1, 1) == 2);
    CHECK(genus_of_polarization(2, 4) == 9);
    CHECK_THROWS_AS(genus_of_polarization(0, 3), InvalidInput);
    CHECK_THROWS_AS(genus_of_polarization(1, -1), InvalidInput);
}

TEST_CASE("make_siegel validates and caches the imaginary part") {
    SiegelMatrix z = make_siegel(cdouble(0.0, 1.0), cdouble(0.0, 0.0), cdouble(0.0, 1.0));
    CHECK(z.y.a == Catch::Approx(1.0));
    CHECK(z.y.b == Catch::Approx(0.0));
    CHECK(z.y.d == Catch::Approx(1.0));
    CHECK(z.lambda_min == Catch::Approx(1.0));
    CHECK(z.lambda_max == Catch::Approx(1.0));
    CHECK(z.yinv.a == Catch::Approx(1.0));

    SiegelMatrix w = make_siegel(cdouble(0.2, 1.1), cdouble(0.1, 0.3), cdouble(-0.4, 1.7));
    CHECK(w.lambda_min > 0.0);
    CHECK(w.lambda_min <= w.lambda_max);
    // yinv really inverts y.
    rvec2 x = {0.37, -1.2};
    rvec2 back = w.yinv.apply(w.y.apply(x));
    CHECK(back[0] == Catch::Approx(x[0]).margin(1e-13));
    CHECK(back[1] == Catch::Approx(x[1]).margin(1e-13));
}

TEST_CASE("matrices outside the Siegel domain are rejected") {
    CHECK_THROWS_AS(make_siegel(cdouble(0.0, -1.0), cdouble(0.0, 0.0), cdouble(0.0, 1.0)),
                    NotPositiveDefinite);
    // Indefinite imaginary part: det Y < 0.
    CHECK_THROWS_AS(make_siegel(cdouble(0.0, 0.5), cdouble(0.0, 2.0), cdouble(0.0, 0.5)),
                    NotPositiveDefinite);
    // Degenerate (singular) imaginary part.
    CHECK_THROWS_AS(make_siegel(cdouble(0.0, 1.0), cdouble(0.0, 1.0), cdouble(0.0, 1.0)),
                    NotPositiveDefinite);
}

TEST_CASE("zx applies Z to a real vector") {
    SiegelMatrix z = make_siegel(cdouble(0.2, 1.1), cdouble(0.1, 0.3), cdouble(-0.4, 1.7));
    rvec2 x = {2.0, -1.0};
    cvec2 zx = z.zx(x);
    CHECK(std::abs(zx[0] - (2.0 * z.z11 - z.z12)) < 1e-15);
    CHECK(std::abs(zx[1] - (2.0 * z.z12 - z.z22)) < 1e-15);
}

TEST_CASE("riemann form against the bilinear form") {
    SiegelMatrix z = make_siegel(cdouble(0.2, 1.1), cdouble(0.1, 0.3), cdouble(-0.4, 1.7));
    cvec2 v = {cdouble(0.3, -0.2), cdouble(-0.1, 0.5)};
    cvec2 w = {cdouble(1.1, 0.4), cdouble(0.2, -0.7)};

    // H(v, w) = B(v, conj w); they agree when the second argument is real.
    cvec2 wr = {cdouble(0.8, 0.0), cdouble(-0.3, 0.0)};
    CHECK(std::abs(riemann_form(z, v, wr) - bilinear_form(z, v, wr)) < 1e-14);

    // Hermitian symmetry: H(w, v) = conj H(v, w).
    CHECK(std::abs(riemann_form(z, w, v) - std::conj(riemann_form(z, v, w))) < 1e-14);

    // Positivity on the diagonal.
    CHECK(riemann_form(z, v, v).real() > 0.0);
    CHECK(std::abs(riemann_form(z, v, v).imag()) < 1e-14);

    // B is symmetric.
    CHECK(std::abs(bilinear_form(z, v, w) - bilinear_form(z, w, v)) < 1e-14);
}

TEST_CASE("imaginary part of H is the standard symplectic form on the lattice") {
    // On the basis (Z e1, Z e2, D e1, D e2) the pairing matrix of Im H must
    // be [[0, D], [-D, 0]] with D = diag(1, 3); all 16 entries are checked.
    SiegelMatrix z = make_siegel(cdouble(0.2, 1.1), cdouble(0.1, 0.3), cdouble(-0.4, 1.7));
    std::array<cvec2, 4> basis = {
        z.zx(rvec2{1.0, 0.0}),
        z.zx(rvec2{0.0, 1.0}),
        cvec2{cdouble(1.0, 0.0), cdouble(0.0, 0.0)},
        cvec2{cdouble(0.0, 0.0), cdouble(3.0, 0.0)},
    };
    const double expected[4][4] = {
        {0.0, 0.0, 1.0, 0.0},
        {0.0, 0.0, 0.0, 3.0},
        {-1.0, 0.0, 0.0, 0.0},
        {0.0, -3.0, 0.0, 0.0},
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(imag_h(z, basis[i], basis[j]) == Catch::Approx(expected[i][j]).margin(1e-12));
}

TEST_CASE("random_siegel is deterministic and always valid") {
    for (std::uint64_t seed : {1ULL, 7ULL, 42ULL, 123456789ULL}) {
        SiegelMatrix a = random_siegel(seed);
        SiegelMatrix b = random_siegel(seed);
        CHECK(a.z11 == b.z11);
        CHECK(a.z12 == b.z12);
        CHECK(a.z22 == b.z22);
        CHECK(a.lambda_min >= 0.3 - 1e-12);  // Y = Q^T Q + 0.3 I
        CHECK(std::abs(a.z11.real()) <= 0.5);
        CHECK(std::abs(a.z12.real()) <= 0.5);
        CHECK(std::abs(a.z22.real()) <= 0.5);
    }
    CHECK(random_siegel(1).z11 != random_siegel(2).z11);
}
