// The degree-2 Siegel upper half-plane and the two sesquilinear forms the
// whole library rests on.
//
// A point is a symmetric 2x2 complex matrix Z = X + iY with Y positive
// definite.  For the polarised torus C^2 / (Z Z^2 + D Z^2), D = diag(1, 3),
// the Riemann form of the polarisation is
//
//     H(v, w) = v^T Y^{-1} conj(w),
//
// complex linear in the first argument and conjugate-linear in the second,
// and the associated C-bilinear form is B(v, w) = v^T Y^{-1} w.  On the
// lattice basis (columns of Z, then columns of D) the imaginary part of H
// takes the integer block form [[0, D], [-D, 0]]; this is checked by the
// test suite and fixes every sign convention downstream.

#ifndef THETA13_SIEGEL_HPP
#define THETA13_SIEGEL_HPP

#include <cmath>
#include <complex>
#include <string>

#include "theta13/errors.hpp"
#include "theta13/linalg.hpp"
#include "theta13/sampling.hpp"

namespace theta13 {

// The polarisation type (d1, d2) = (1, 3) is fixed for the whole library;
// it enters through this constant rather than ad-hoc literals.
struct PolarizationType {
    int d1 = 1;
    int d2 = 3;
};

inline constexpr PolarizationType kPolarization{1, 3};

// Arithmetic genus of a curve in the polarisation class of type (d1, d2):
// g = 1 + d1*d2 by the adjunction formula on an abelian surface.
inline int genus_of_polarization(int d1, int d2) {
    if (d1 < 1 || d2 < 1) throw InvalidInput("genus_of_polarization: d1, d2 must be >= 1");
    return 1 + d1 * d2;
}

struct SiegelMatrix {
    cdouble z11, z12, z22;
    sym2 y;           // Im Z
    sym2 yinv;        // (Im Z)^{-1}
    double lambda_min = 0.0, lambda_max = 0.0;  // spectrum of Y

    // Z * x for a real 2-vector x.
    cvec2 zx(const rvec2& x) const {
        return {z11 * x[0] + z12 * x[1], z12 * x[0] + z22 * x[1]};
    }
    // Z * x for a complex 2-vector x.
    cvec2 zx(const cvec2& x) const {
        return {z11 * x[0] + z12 * x[1], z12 * x[0] + z22 * x[1]};
    }
};

// Validating constructor for a Siegel point.  Rejects Y with smallest
// eigenvalue <= 1e-10 (numerically indefinite) and checks the inverse to
// 1e-13 so downstream forms are trustworthy.
inline SiegelMatrix make_siegel(cdouble z11, cdouble z12, cdouble z22) {
    SiegelMatrix z;
    z.z11 = z11;
    z.z12 = z12;
    z.z22 = z22;
    z.y = {z11.imag(), z12.imag(), z22.imag()};
    z.lambda_min = z.y.eig_min();
    z.lambda_max = z.y.eig_max();
    if (!(z.lambda_min > 1e-10))
        throw NotPositiveDefinite("make_siegel: Im Z has smallest eigenvalue " +
                                  std::to_string(z.lambda_min) + " <= 1e-10");
    z.yinv = z.y.inverse();
    // Consistency of the cached inverse: ||Yinv*Y - I||_max < 1e-13.
    double e00 = std::abs(z.yinv.a * z.y.a + z.yinv.b * z.y.b - 1.0);
    double e01 = std::abs(z.yinv.a * z.y.b + z.yinv.b * z.y.d);
    double e11 = std::abs(z.yinv.b * z.y.b + z.yinv.d * z.y.d - 1.0);
    if (e00 > 1e-13 || e01 > 1e-13 || e11 > 1e-13)
        throw NotPositiveDefinite("make_siegel: Im Z too ill-conditioned to invert reliably");
    return z;
}

// H(v, w) = v^T Y^{-1} conj(w): the Riemann form of the (1,3) polarisation.
inline cdouble riemann_form(const SiegelMatrix& z, const cvec2& v, const cvec2& w) {
    cvec2 u = z.yinv.apply(conj(w));
    return dot(v, u);
}

// B(v, w) = v^T Y^{-1} w: the C-bilinear companion of H.  H - B vanishes
// on real vectors and is what enters the canonical theta series.
inline cdouble bilinear_form(const SiegelMatrix& z, const cvec2& v, const cvec2& w) {
    cvec2 u = z.yinv.apply(w);
    return dot(v, u);
}

// Im H(v, w); on lattice vectors this is the integer symplectic pairing.
inline double imag_h(const SiegelMatrix& z, const cvec2& v, const cvec2& w) {
    return riemann_form(z, v, w).imag();
}

// A random Siegel point with Re Z entries uniform in [-1/2, 1/2] and
// Im Z = Q^T Q + 0.3 I for Q with entries uniform in [-1, 1].  The 0.3 I
// shift keeps lambda_min >= 0.3, bounding theta truncation radii.
inline SiegelMatrix random_siegel(std::uint64_t seed) {
    Rng rng(mix_seed(seed));
    double x11 = rng.uniform(-0.5, 0.5);
    double x12 = rng.uniform(-0.5, 0.5);
    double x22 = rng.uniform(-0.5, 0.5);
    double q00 = rng.uniform(-1.0, 1.0), q01 = rng.uniform(-1.0, 1.0);
    double q10 = rng.uniform(-1.0, 1.0), q11 = rng.uniform(-1.0, 1.0);
    double y11 = q00 * q00 + q10 * q10 + 0.3;
    double y12 = q00 * q01 + q10 * q11;
    double y22 = q01 * q01 + q11 * q11 + 0.3;
    return make_siegel({x11, y11}, {x12, y12}, {x22, y22});
}

} // namespace theta13

#endif
