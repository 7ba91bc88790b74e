// Canonical theta functions for the (1,3) polarisation.
//
// For a characteristic c = Z r + c2 (r, c2 real 2-vectors) the canonical
// theta function of the line bundle L_c is
//
//   theta^c(v) = exp(-pi H(v,c) - (pi/2) H(c,c) + (pi/2) B(v+c, v+c))
//                * sum_{lam in Z Z^2} exp(pi (H-B)(v+c, lam) - (pi/2)(H-B)(lam, lam)),
//
// with H the Riemann form and B its bilinear companion.  The series is
// evaluated verbatim through the forms; its term magnitudes match the
// classical series at argument v + c with zero characteristic, so the same
// certified truncation radius applies.
//
// The shift operator uses the semicharacter of L_c on the subgroup Z R^2:
//
//   theta^c_mu(v) = a(mu, v)^{-1} theta^c(v + mu),
//   a(mu, v) = exp(2 pi i Im H(c, mu)) * exp(pi H(v, mu) + (pi/2) H(mu, mu)).
//
// The unitary prefactor exp(2 pi i Im H(c, mu)) twists the semicharacter by
// the characteristic; without it the inverse formula below fails by a sign
// for half-period characteristics.  With it,
//
//   theta^c_eta(-v) = exp(4 pi i Im H(eta + c1, c2)) * theta^c_{-eta-2c1}(v)
//
// holds for all 2-torsion c and all eta in K(L)_1 = {0, omega, -omega}.

#ifndef THETA13_CANONICAL_HPP
#define THETA13_CANONICAL_HPP

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "theta13/errors.hpp"
#include "theta13/sampling.hpp"
#include "theta13/siegel.hpp"
#include "theta13/theta.hpp"
#include "theta13/torus.hpp"

namespace theta13 {

// Characteristic c = Z r + c2 of a symmetric line bundle in the (1,3)
// polarisation class; r and c2 are real 2-vectors (c2 is NOT scaled by D).
struct ComplexCharacteristic {
    rvec2 r{};
    rvec2 c2{};

    cvec2 c(const SiegelMatrix& z) const { return z.zx(r) + to_cvec2(c2); }
};

// The symmetric-bundle characteristic attached to a half-integer theta
// characteristic (c1; c2): the 2-torsion point Z c1 + D c2.
inline ComplexCharacteristic from_two_torsion(const RealCharacteristic& ch) {
    return {ch.c1, d_apply(ch.c2)};
}

namespace detail {

// The lattice series of theta^c, summed verbatim through the forms over
// the disk |n| <= radius.  On lam = Z n the identities (H-B)(x, Z n) =
// -2i x^T n and (H-B)(Z n, Z n) = -2i n^T Z n make this literally the
// classical series theta[0,0](u, Z); this direct form is kept as a
// cross-check target (it loses relative precision at unreduced u, which
// is why production goes through the reduced classical evaluator).
inline cdouble canonical_series_verbatim(const SiegelMatrix& z, const cvec2& u, int radius) {
    std::complex<long double> acc = 0.0;
    const double r = radius;
    for (long n1 = static_cast<long>(std::ceil(-r)); n1 <= static_cast<long>(std::floor(r)); ++n1) {
        const double rem = r * r - double(n1) * double(n1);
        if (rem < 0.0) continue;
        const double half = std::sqrt(rem);
        for (long n2 = static_cast<long>(std::ceil(-half)); n2 <= static_cast<long>(std::floor(half));
             ++n2) {
            const cvec2 lam = z.zx(rvec2{double(n1), double(n2)});
            const cdouble hb_ul = riemann_form(z, u, lam) - bilinear_form(z, u, lam);
            const cdouble hb_ll = riemann_form(z, lam, lam) - bilinear_form(z, lam, lam);
            acc += std::exp(kPi * hb_ul - 0.5 * kPi * hb_ll);
        }
    }
    return static_cast<cdouble>(acc);
}

} // namespace detail

// theta^c(v): canonical theta of L_c.  The exponential prefactor is taken
// verbatim from the forms H and B; the lattice series equals the classical
// theta[0,0] at u = v + c and is evaluated through the reduced classical
// path so relative precision is uniform in v.
inline ThetaValue canonical_theta(const SiegelMatrix& z, const ComplexCharacteristic& cc,
                                  const cvec2& v, double eps) {
    const cvec2 c = cc.c(z);
    const cvec2 u = v + c;
    const cdouble pref = std::exp(-detail::kPi * riemann_form(z, v, c) -
                                  0.5 * detail::kPi * riemann_form(z, c, c) +
                                  0.5 * detail::kPi * bilinear_form(z, u, u));
    ThetaValue series = classical_theta(z, RealCharacteristic{}, u, eps);
    ThetaValue out;
    out.value = pref * series.value;
    out.tail_bound = std::abs(pref) * series.tail_bound;
    out.radius_used = series.radius_used;
    return out;
}

// theta^c translated by mu = Z mu_r through the twisted semicharacter:
// theta^c_mu(v) = a(mu, v)^{-1} theta^c(v + mu).  mu_r is the real
// preimage, so the branch of the translate is pinned by the caller.
inline ThetaValue canonical_theta_translated(const SiegelMatrix& z, const ComplexCharacteristic& cc,
                                             const rvec2& mu_r, const cvec2& v, double eps) {
    const cvec2 mu = z.zx(mu_r);
    const cvec2 c = cc.c(z);
    const cdouble twist = std::exp(cdouble(0.0, detail::kTwoPi) * imag_h(z, c, mu));
    const cdouble a = twist * std::exp(detail::kPi * riemann_form(z, v, mu) +
                                       0.5 * detail::kPi * riemann_form(z, mu, mu));
    ThetaValue t = canonical_theta(z, cc, v + mu, eps);
    ThetaValue out;
    out.value = t.value / a;
    out.tail_bound = t.tail_bound / std::abs(a);
    out.radius_used = t.radius_used;
    return out;
}

namespace detail {

// Balanced kernel preimage: eta must lie in K(L)_1 = {0, omega, -omega};
// returns r with eta = Z r (mod lattice) and r in {(0,0), (0,1/3), (0,-1/3)}.
inline rvec2 kernel_one_preimage(const TorusPoint& eta) {
    auto frac_near = [](double u, double target) {
        double d = u - target;
        return std::abs(d - std::round(d)) < 1e-9;
    };
    if (!frac_near(eta.y[0], 0.0) || !frac_near(eta.y[1], 0.0) || !frac_near(eta.x[0], 0.0))
        throw EtaNotInKernel("eta is not in the cyclic subgroup K(L)_1");
    double f = eta.x[1] - std::floor(eta.x[1]);
    if (frac_near(f, 0.0)) return {0.0, 0.0};
    if (frac_near(f, 1.0 / 3.0)) return {0.0, 1.0 / 3.0};
    if (frac_near(f, 2.0 / 3.0)) return {0.0, -1.0 / 3.0};
    throw EtaNotInKernel("eta is not in the cyclic subgroup K(L)_1");
}

} // namespace detail

// theta^c_eta for eta in K(L)_1 given as a torus point; the balanced
// preimage r in {0, (0, 1/3), (0, -1/3)} fixes which literal translate of
// theta^c is meant.
inline ThetaValue canonical_theta_shifted(const SiegelMatrix& z, const ComplexCharacteristic& cc,
                                          const TorusPoint& eta, const cvec2& v, double eps) {
    return canonical_theta_translated(z, cc, detail::kernel_one_preimage(eta), v, eps);
}

// Largest relative defect of the inverse formula
//   theta^c_eta(-v) = exp(4 pi i Im H(eta + c1, c2)) theta^c_{-eta-2c1}(v)
// over a fixed deterministic sample of 20 points.  c must be 2-torsion
// (2c in the lattice) for the right-hand subscript to be a translate by a
// lattice-shifted kernel element; that is the caller's obligation.
inline double inverse_formula_residual(const SiegelMatrix& z, const ComplexCharacteristic& cc,
                                       const TorusPoint& eta) {
    const rvec2 eta_r = detail::kernel_one_preimage(eta);
    // Im H(eta + c1, c2) for eta = Z e_r, c1 = Z r reduces to (e_r + r) . c2
    // by the lattice pairing normalisation.
    const double pairing = dot(eta_r + cc.r, cc.c2);
    const cdouble factor = std::exp(cdouble(0.0, 4.0 * detail::kPi) * pairing);
    const rvec2 sub = -eta_r - 2.0 * cc.r;

    Rng rng(mix_seed(0x1F3A5C7E9B2D4F68ULL));
    double worst = 0.0;
    double scale = 0.0;
    std::array<cdouble, 20> lhs, rhs;
    for (int i = 0; i < 20; ++i) {
        cvec2 v = {cdouble(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8)),
                   cdouble(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))};
        lhs[i] = canonical_theta_translated(z, cc, eta_r, -v, 1e-13).value;
        rhs[i] = factor * canonical_theta_translated(z, cc, sub, v, 1e-13).value;
        scale = std::max({scale, std::abs(lhs[i]), std::abs(rhs[i])});
    }
    for (int i = 0; i < 20; ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    return worst / std::max(scale, 1e-300);
}

// Dimensions (h_plus, h_minus) of the (+1, -1) eigenspaces of (-1)^* acting
// on H^0(L_c), computed as the ranks of the symmetrised / antisymmetrised
// sample matrices of the basis {theta^c_0, theta^c_omega, theta^c_{-omega}}
// at 12 deterministic points.  Ranks are certified through a guard band on
// the singular values.
inline std::pair<int, int> eigenspace_dims(const SiegelMatrix& z, const ComplexCharacteristic& cc) {
    constexpr int kCols = 12;
    const std::array<rvec2, 3> etas = {rvec2{0.0, 0.0}, rvec2{0.0, 1.0 / 3.0},
                                       rvec2{0.0, -1.0 / 3.0}};
    Rng rng(mix_seed(0x8E2B9D4C6A1F3E57ULL));
    std::array<cvec2, kCols> pts;
    for (int j = 0; j < kCols; ++j)
        pts[j] = {cdouble(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7)),
                  cdouble(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))};

    std::array<std::array<cdouble, kCols>, 3> plus{}, minus{};
    for (int j = 0; j < kCols; ++j) {
        std::array<cdouble, 3> fp, fm;
        double colmax = 0.0;
        for (int i = 0; i < 3; ++i) {
            fp[i] = canonical_theta_translated(z, cc, etas[i], pts[j], 1e-14).value;
            fm[i] = canonical_theta_translated(z, cc, etas[i], -pts[j], 1e-14).value;
            colmax = std::max({colmax, std::abs(fp[i]), std::abs(fm[i])});
        }
        // Normalise the column by the largest of the six basis values at
        // this point: rank is invariant under nonzero column scaling, and
        // equalised columns keep the roundoff floor of the small singular
        // values far below the guard band.
        double d = (colmax > 0.0) ? 1.0 / colmax : 1.0;
        for (int i = 0; i < 3; ++i) {
            plus[i][j] = (fp[i] + fm[i]) * d;
            minus[i][j] = (fp[i] - fm[i]) * d;
        }
    }
    int hp = rank_with_guard(singular_values_3xN(plus));
    int hm = rank_with_guard(singular_values_3xN(minus));
    return {hp, hm};
}

} // namespace theta13

#endif
