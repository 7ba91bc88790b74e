// Independent oracle evaluators, deliberately naive: a square-box lattice
// sum with compensated (Neumaier) accumulation and no argument reduction,
// a finite-difference gradient, and an exact integer parity census.  These
// share no code path with the production evaluators they cross-check.

#ifndef THETA13_ORACLE_HPP
#define THETA13_ORACLE_HPP

#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "theta13/errors.hpp"
#include "theta13/siegel.hpp"
#include "theta13/torus.hpp"

namespace theta13 {

struct OracleConfig {
    int box_radius = 20;   // square box |l_i| <= box_radius, capped at 64
    double fd_step = 1e-5; // central-difference step
};

namespace detail {

// Neumaier compensated accumulator for one double stream.
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

} // namespace detail

// theta[c1, c2](v, Z) summed naively over the square box max(|l1|, |l2|)
// <= box_radius, in row-major order, with compensated summation and no
// reduction of v.  The box is capped at 64 to keep the oracle O(1)-ish.
inline cdouble direct_theta(const SiegelMatrix& z, const RealCharacteristic& ch, const cvec2& v,
                            int box_radius = 20) {
    if (box_radius < 1 || box_radius > 64)
        throw InvalidInput("direct_theta: box_radius must be in [1, 64]");
    const double pi = 3.141592653589793238462643383279502884;
    detail::Kahan re, im;
    for (long l1 = -box_radius; l1 <= box_radius; ++l1) {
        for (long l2 = -box_radius; l2 <= box_radius; ++l2) {
            const double q1 = l1 + ch.c1[0];
            const double q2 = l2 + ch.c1[1];
            const cdouble zq0 = z.z11 * q1 + z.z12 * q2;
            const cdouble zq1 = z.z12 * q1 + z.z22 * q2;
            const cdouble quad = q1 * zq0 + q2 * zq1;
            const cdouble lin = (v[0] + ch.c2[0]) * q1 + (v[1] + ch.c2[1]) * q2;
            const cdouble term = std::exp(cdouble(0.0, pi) * quad + cdouble(0.0, 2.0 * pi) * lin);
            re.add(term.real());
            im.add(term.imag());
        }
    }
    return {re.total(), im.total()};
}

// Finite-difference estimate of the holomorphic gradient of theta[c1, c2].
// For each coordinate the central difference is taken along both the real
// and the imaginary axis and the two estimates averaged; for a holomorphic
// function both converge to the same derivative, and the average cancels
// part of the O(h^2) truncation error.
inline cvec2 fd_gradient(const SiegelMatrix& z, const RealCharacteristic& ch, const cvec2& v,
                         double h = 1e-5, int box_radius = 20) {
    if (!(h >= 1e-8 && h <= 1e-2))
        throw InvalidInput("fd_gradient: step h must be in [1e-8, 1e-2]");
    cvec2 grad{};
    for (int k = 0; k < 2; ++k) {
        cvec2 vp = v, vm = v;
        vp[k] += h;
        vm[k] -= h;
        cdouble d_re = (direct_theta(z, ch, vp, box_radius) - direct_theta(z, ch, vm, box_radius)) /
                       (2.0 * h);
        vp = v;
        vm = v;
        vp[k] += cdouble(0.0, h);
        vm[k] -= cdouble(0.0, h);
        cdouble d_im = (direct_theta(z, ch, vp, box_radius) - direct_theta(z, ch, vm, box_radius)) /
                       cdouble(0.0, 2.0 * h);
        grad[k] = 0.5 * (d_re + d_im);
    }
    return grad;
}

// Exact census of half-integer characteristic parities: (even, odd) counts
// over all 16, by integer arithmetic only.
inline std::pair<int, int> enumerate_parities() {
    int even = 0, odd = 0;
    for (int a0 = 0; a0 < 2; ++a0)
        for (int a1 = 0; a1 < 2; ++a1)
            for (int b0 = 0; b0 < 2; ++b0)
                for (int b1 = 0; b1 < 2; ++b1)
                    (((a0 * b0 + a1 * b1) % 2 == 0) ? even : odd) += 1;
    return {even, odd};
}

} // namespace theta13

#endif
