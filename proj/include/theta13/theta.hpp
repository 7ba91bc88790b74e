// Classical Riemann theta with characteristics, with a certified
// truncation bound.
//
//   theta[c1, c2](v, Z) = sum_{l in Z^2} exp(pi i (l+c1)^T Z (l+c1)
//                                            + 2 pi i (v+c2)^T (l+c1)).
//
// Evaluation strategy: reduce v into the fundamental cell of Z Z^2 + D Z^2
// first, sum the series there, then restore the exact quasi-periodicity
// multiplier.  The lattice sum runs over the Euclidean disk |l + c1| <= R;
// with q = l + c1, b = Im(reduced v) and lambda = min eig(Im Z),
//
//   |term(q)| = exp(-pi q^T Y q - 2 pi b^T q) <= exp(-pi lambda |q|^2 + 2 pi beta |q|),
//
// beta = |b|.  The tail over |q| > R is bounded annulus by annulus: at most
// N_k = pi ((k+1+s)^2 - max(0, k-s)^2), s = sqrt(2)/2, lattice translates of
// the unit square meet the annulus k <= |q| < k+1, each term there bounded by
// the envelope at radius k once R >= beta/lambda + 1 (the envelope is then
// decreasing).  A geometric remainder closes the sum.  The same machinery
// with an extra weight 2 pi (k+1) certifies the gradient series.

#ifndef THETA13_THETA_HPP
#define THETA13_THETA_HPP

#include <cmath>
#include <complex>
#include <string>

#include "theta13/errors.hpp"
#include "theta13/siegel.hpp"
#include "theta13/torus.hpp"

namespace theta13 {

// A certified value: |true - value| <= tail_bound holds for the truncation
// error of the series (floating-point rounding is separate and far below
// every tolerance used in this library).
struct ThetaValue {
    cdouble value{};
    double tail_bound = 0.0;
    int radius_used = 0;
};

namespace detail {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Upper bound for the tail sum_{|q| > R} w(q) exp(-pi lambda |q|^2 + 2 pi beta |q|),
// with w = 1 (weight_order 0) or w = 2 pi |q| (weight_order 1, bounding the
// gradient series |2 pi i q exp(...)| componentwise).
inline double tail_estimate(double lambda, double beta, int radius, int weight_order) {
    const double s = 0.70710678118654752440;  // sqrt(2)/2: half-diagonal of a unit cell
    double acc = 0.0;
    int k = radius;
    for (;;) {
        int stop = k + 8;
        double last = 0.0;
        for (; k < stop; ++k) {
            double outer = (k + 1.0 + s);
            double inner = std::max(0.0, k - s);
            double cells = kPi * (outer * outer - inner * inner);
            double w = (weight_order == 1) ? kTwoPi * (k + 1.0) : 1.0;
            last = cells * w * std::exp(-kPi * lambda * double(k) * double(k) + kTwoPi * beta * k);
            acc += last;
            if (!std::isfinite(acc)) return acc;
        }
        // Ratio bound between consecutive annulus terms: the cell count and
        // the weight each grow by a factor <= 2, the envelope shrinks by
        // exp(-pi lambda (2k+1) + 2 pi beta).
        double rho = 4.0 * std::exp(-kPi * lambda * (2.0 * k + 1.0) + kTwoPi * beta);
        if (rho < 0.5) {
            acc += last * rho / (1.0 - rho);
            return acc;
        }
        // Envelope not yet decaying fast enough; extend the explicit sum.
    }
}

} // namespace detail

// Smallest radius R (in |l + c1|) whose certified tail is <= eps.  Requires
// R >= beta/lambda + 1 so the annulus envelope is monotone.  Throws
// EpsTooSmall past R = 10^4; with lambda >= 0.3 that never triggers for
// reduced arguments and any eps representable in double.
inline int truncation_radius(const sym2& y, const rvec2& /*c1*/, const cvec2& v, double eps,
                             int weight_order = 0) {
    if (!(eps > 0.0)) throw InvalidInput("truncation_radius: eps must be positive");
    double lambda = y.eig_min();
    if (!(lambda > 0.0)) throw NotPositiveDefinite("truncation_radius: Y not positive definite");
    double beta = norm2(imag_part(v));
    int rmin = std::max(1, static_cast<int>(std::ceil(beta / lambda)) + 1);
    // Warm start near the envelope solution of exp(-pi l R^2 + 2 pi b R) =
    // eps / 100, then walk to the smallest certified radius; the walk keeps
    // the result identical to a linear scan from rmin.
    double disc = beta * beta + (lambda / detail::kPi) * std::log(100.0 / eps);
    int guess = static_cast<int>(std::ceil((beta + std::sqrt(std::max(0.0, disc))) / lambda));
    int r = std::min(10000, std::max(rmin, guess));
    if (detail::tail_estimate(lambda, beta, r, weight_order) <= eps) {
        while (r > rmin && detail::tail_estimate(lambda, beta, r - 1, weight_order) <= eps) --r;
        return r;
    }
    for (++r; r <= 10000; ++r) {
        if (detail::tail_estimate(lambda, beta, r, weight_order) <= eps) return r;
    }
    throw EpsTooSmall("truncation_radius: no radius <= 10^4 certifies eps=" + std::to_string(eps));
}

inline int truncation_radius(const SiegelMatrix& z, const rvec2& c1, const cvec2& v, double eps,
                             int weight_order = 0) {
    return truncation_radius(z.y, c1, v, eps, weight_order);
}

namespace detail {

// Quasi-periodicity multiplier e(m, n; v) with
//   theta[c1,c2](v + Z m + D n) = e * theta[c1,c2](v),
//   e = exp(-pi i m^T Z m - 2 pi i m^T (v + c2) + 2 pi i c1^T D n).
inline cdouble qp_multiplier(const SiegelMatrix& z, const RealCharacteristic& ch,
                             const std::array<long, 2>& m, const std::array<long, 2>& n,
                             const cvec2& v) {
    rvec2 md = {double(m[0]), double(m[1])};
    cvec2 zm = z.zx(md);
    cdouble mzm = md[0] * zm[0] + md[1] * zm[1];
    cdouble mv = md[0] * (v[0] + ch.c2[0]) + md[1] * (v[1] + ch.c2[1]);
    double c1dn = ch.c1[0] * kD1 * n[0] + ch.c1[1] * kD2 * n[1];
    cdouble iexp = cdouble(0.0, -kPi) * mzm + cdouble(0.0, -kTwoPi) * mv +
                   cdouble(0.0, kTwoPi) * c1dn;
    return std::exp(iexp);
}

struct CoreSums {
    std::complex<long double> val{};
    std::complex<long double> g1{};
    std::complex<long double> g2{};
    int radius = 0;
};

// Lattice sum over the Euclidean disk |l + c1| <= R at an (already reduced)
// argument.  Accumulates in long double so that cancellation probes like
// theta(v) + theta(-v) for odd series stay inside the certified tail.
inline CoreSums theta_core(const SiegelMatrix& z, const RealCharacteristic& ch, const cvec2& v,
                           double eps, bool with_grad) {
    CoreSums out;
    out.radius = truncation_radius(z.y, ch.c1, v, eps, with_grad ? 1 : 0);
    const double r = out.radius;
    const cvec2 vc2 = {v[0] + ch.c2[0], v[1] + ch.c2[1]};

    const long l1lo = static_cast<long>(std::ceil(-ch.c1[0] - r));
    const long l1hi = static_cast<long>(std::floor(-ch.c1[0] + r));
    for (long l1 = l1lo; l1 <= l1hi; ++l1) {
        const double q1 = l1 + ch.c1[0];
        const double rem = r * r - q1 * q1;
        if (rem < 0.0) continue;
        const double half = std::sqrt(rem);
        const long l2lo = static_cast<long>(std::ceil(-ch.c1[1] - half));
        const long l2hi = static_cast<long>(std::floor(-ch.c1[1] + half));
        for (long l2 = l2lo; l2 <= l2hi; ++l2) {
            const double q2 = l2 + ch.c1[1];
            // pi i q^T Z q + 2 pi i (v + c2)^T q
            const cdouble zq0 = z.z11 * q1 + z.z12 * q2;
            const cdouble zq1 = z.z12 * q1 + z.z22 * q2;
            const cdouble quad = q1 * zq0 + q2 * zq1;
            const cdouble lin = vc2[0] * q1 + vc2[1] * q2;
            const cdouble term = std::exp(cdouble(0.0, kPi) * quad + cdouble(0.0, kTwoPi) * lin);
            out.val += term;
            if (with_grad) {
                out.g1 += std::complex<long double>(term * cdouble(0.0, kTwoPi * q1));
                out.g2 += std::complex<long double>(term * cdouble(0.0, kTwoPi * q2));
            }
        }
    }
    return out;
}

struct EvalParts {
    Reduction red;
    CoreSums core;
    cdouble mult;
};

inline EvalParts theta_parts(const SiegelMatrix& z, const RealCharacteristic& ch, const cvec2& v,
                             double eps, bool with_grad) {
    EvalParts p;
    p.red = reduce_centered(z, v);
    p.core = theta_core(z, ch, p.red.reduced.v, eps, with_grad);
    p.mult = qp_multiplier(z, ch, p.red.m, p.red.n, p.red.reduced.v);
    return p;
}

} // namespace detail

// theta[c1, c2](v, Z) with certified truncation error.  The series is
// summed at the reduced representative (precision uniform over C^2); the
// reported tail bound is eps scaled by the exact multiplier magnitude.
inline ThetaValue classical_theta(const SiegelMatrix& z, const RealCharacteristic& ch,
                                  const cvec2& v, double eps) {
    auto p = detail::theta_parts(z, ch, v, eps, false);
    ThetaValue out;
    out.value = p.mult * static_cast<cdouble>(p.core.val);
    out.tail_bound = std::abs(p.mult) * eps;
    out.radius_used = p.core.radius;
    return out;
}

// Holomorphic gradient (d/dv1, d/dv2) of theta[c1, c2] at v.  Under the
// reduction v = v_red + Z m + D n the chain rule gives
//   grad theta(v) = e * (grad theta(v_red) - 2 pi i m theta(v_red)).
inline std::array<ThetaValue, 2> classical_theta_gradient(const SiegelMatrix& z,
                                                          const RealCharacteristic& ch,
                                                          const cvec2& v, double eps) {
    auto p = detail::theta_parts(z, ch, v, eps, true);
    const cdouble val = static_cast<cdouble>(p.core.val);
    std::array<ThetaValue, 2> out;
    const cdouble g[2] = {static_cast<cdouble>(p.core.g1), static_cast<cdouble>(p.core.g2)};
    for (int k = 0; k < 2; ++k) {
        cdouble corr = g[k] - cdouble(0.0, detail::kTwoPi) * double(p.red.m[k]) * val;
        out[k].value = p.mult * corr;
        // Weighted radius certifies both series to eps; the m-correction
        // carries the value tail with weight 2 pi |m_k|.
        out[k].tail_bound = std::abs(p.mult) * eps * (1.0 + detail::kTwoPi * std::abs(double(p.red.m[k])));
        out[k].radius_used = p.core.radius;
    }
    return out;
}

// Value and gradient from one lattice enumeration; the workhorse for the
// zero finder where both are always needed together.
struct ThetaWithGradient {
    ThetaValue value;
    std::array<ThetaValue, 2> gradient;
};

inline ThetaWithGradient classical_theta_with_gradient(const SiegelMatrix& z,
                                                       const RealCharacteristic& ch, const cvec2& v,
                                                       double eps) {
    auto p = detail::theta_parts(z, ch, v, eps, true);
    ThetaWithGradient out;
    const cdouble val = static_cast<cdouble>(p.core.val);
    out.value.value = p.mult * val;
    out.value.tail_bound = std::abs(p.mult) * eps;
    out.value.radius_used = p.core.radius;
    const cdouble g[2] = {static_cast<cdouble>(p.core.g1), static_cast<cdouble>(p.core.g2)};
    for (int k = 0; k < 2; ++k) {
        cdouble corr = g[k] - cdouble(0.0, detail::kTwoPi) * double(p.red.m[k]) * val;
        out.gradient[k].value = p.mult * corr;
        out.gradient[k].tail_bound =
            std::abs(p.mult) * eps * (1.0 + detail::kTwoPi * std::abs(double(p.red.m[k])));
        out.gradient[k].radius_used = p.core.radius;
    }
    return out;
}

// Relative defect of the quasi-periodicity law at lattice vector lam:
//   theta(v + lam) versus e(m, n; v) theta(v)  for lam = Z m + D n.
// Throws NotLatticeVector if lam is farther than 1e-9 from the lattice in
// real coordinates.
inline double quasiperiodicity_residual(const SiegelMatrix& z, const RealCharacteristic& ch,
                                        const cvec2& lam, const cvec2& v, double eps = 1e-13) {
    auto [x, y] = to_real_coords(z, lam);
    std::array<long, 2> m, n;
    for (int k = 0; k < 2; ++k) {
        m[k] = std::lround(x[k]);
        n[k] = std::lround(y[k]);
        if (std::abs(x[k] - double(m[k])) > 1e-9 || std::abs(y[k] - double(n[k])) > 1e-9)
            throw NotLatticeVector("quasiperiodicity_residual: vector is not in Z Z^2 + D Z^2");
    }
    cdouble lhs = classical_theta(z, ch, v + lam, eps).value;
    cdouble mult = detail::qp_multiplier(z, ch, m, n, v);
    cdouble rhs = mult * classical_theta(z, ch, v, eps).value;
    double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

} // namespace theta13

#endif
