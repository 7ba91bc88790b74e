// The odd symmetric (1,3) theta divisor C_A and the structural facts the
// library certifies about it.
//
//   theta_A(v) = theta[(0,-1/3); 0](v, Z) - theta[(0,1/3); 0](v, Z)
//
// is odd (each summand picks up the other under v -> -v), and its zero set
// C_A is, for generic Z, a smooth hyperelliptic genus-4 curve through
// exactly ten of the sixteen 2-torsion points.  The canonical counterpart
//   theta_{A,L_c} = theta^c_omega - exp(4 pi i Im H(omega, c2)) theta^c_{-omega}
// cuts the translate C_A + c out of H^0(L_c) for every 2-torsion c.
//
// For product points Z = diag(tau1, tau2) the series factorises,
//   theta_A(v1, v2) = f(v1) g(v2),
//   f(v1) = sum_l exp(pi i l^2 tau1 + 2 pi i l v1),
//   g(v2) = sum_l [exp(pi i (l-1/3)^2 tau2 + 2 pi i (l-1/3) v2)
//                  - exp(pi i (l+1/3)^2 tau2 + 2 pi i (l+1/3) v2)],
// and C_A degenerates to one vertical copy of the elliptic curve
// {v1 = (1+tau1)/2} plus three horizontal copies {v2 in {0, 3/2, tau2/2}}.

#ifndef THETA13_DIVISOR_HPP
#define THETA13_DIVISOR_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "theta13/canonical.hpp"
#include "theta13/errors.hpp"
#include "theta13/sampling.hpp"
#include "theta13/siegel.hpp"
#include "theta13/theta.hpp"
#include "theta13/torus.hpp"

namespace theta13 {

inline constexpr rvec2 kOmegaChar = {0.0, 1.0 / 3.0};

// theta_A as a difference of two classical theta series.
inline ThetaValue theta_A(const SiegelMatrix& z, const cvec2& v, double eps) {
    ThetaValue a = classical_theta(z, {{0.0, -1.0 / 3.0}, {0.0, 0.0}}, v, eps);
    ThetaValue b = classical_theta(z, {{0.0, 1.0 / 3.0}, {0.0, 0.0}}, v, eps);
    return {a.value - b.value, a.tail_bound + b.tail_bound, std::max(a.radius_used, b.radius_used)};
}

inline std::array<ThetaValue, 2> theta_A_gradient(const SiegelMatrix& z, const cvec2& v,
                                                  double eps) {
    auto a = classical_theta_gradient(z, {{0.0, -1.0 / 3.0}, {0.0, 0.0}}, v, eps);
    auto b = classical_theta_gradient(z, {{0.0, 1.0 / 3.0}, {0.0, 0.0}}, v, eps);
    std::array<ThetaValue, 2> out;
    for (int k = 0; k < 2; ++k)
        out[k] = {a[k].value - b[k].value, a[k].tail_bound + b[k].tail_bound,
                  std::max(a[k].radius_used, b[k].radius_used)};
    return out;
}

inline ThetaWithGradient theta_A_with_gradient(const SiegelMatrix& z, const cvec2& v, double eps) {
    auto a = classical_theta_with_gradient(z, {{0.0, -1.0 / 3.0}, {0.0, 0.0}}, v, eps);
    auto b = classical_theta_with_gradient(z, {{0.0, 1.0 / 3.0}, {0.0, 0.0}}, v, eps);
    ThetaWithGradient out;
    out.value = {a.value.value - b.value.value, a.value.tail_bound + b.value.tail_bound,
                 std::max(a.value.radius_used, b.value.radius_used)};
    for (int k = 0; k < 2; ++k)
        out.gradient[k] = {a.gradient[k].value - b.gradient[k].value,
                           a.gradient[k].tail_bound + b.gradient[k].tail_bound,
                           std::max(a.gradient[k].radius_used, b.gradient[k].radius_used)};
    return out;
}

// Canonical form of the same section at c = 0: theta^0_omega - theta^0_{-omega}.
// Vanishes on exactly the zero set of theta_A.
inline ThetaValue theta_A_canonical(const SiegelMatrix& z, const cvec2& v, double eps) {
    ComplexCharacteristic c0{};
    ThetaValue a = canonical_theta_translated(z, c0, kOmegaChar, v, eps);
    ThetaValue b = canonical_theta_translated(z, c0, -kOmegaChar, v, eps);
    return {a.value - b.value, a.tail_bound + b.tail_bound, std::max(a.radius_used, b.radius_used)};
}

// theta_{A, L_c}: the section of H^0(L_c) vanishing on C_A + c, for a
// 2-torsion characteristic c = Z r + c2.  Im H(omega, c2) = (0,1/3) . c2.
inline ThetaValue theta_AL(const SiegelMatrix& z, const ComplexCharacteristic& cc, const cvec2& v,
                           double eps) {
    const cdouble factor =
        std::exp(cdouble(0.0, 4.0 * detail::kPi) * dot(kOmegaChar, cc.c2));
    ThetaValue a = canonical_theta_translated(z, cc, kOmegaChar, v, eps);
    ThetaValue b = canonical_theta_translated(z, cc, -kOmegaChar, v, eps);
    return {a.value - factor * b.value, a.tail_bound + std::abs(factor) * b.tail_bound,
            std::max(a.radius_used, b.radius_used)};
}

// Magnitude scale of theta_A on A_Z: max |theta_A| over the 8x8 grid
// v = Z(j/8, k/8) + D(j/8, k/8).  All divisor tolerances are relative to it.
inline double divisor_scale(const SiegelMatrix& z, double eps = 1e-12) {
    double scale = 0.0;
    for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) {
            cvec2 v = from_real_coords(z, {j / 8.0, k / 8.0}, {j / 8.0, k / 8.0});
            scale = std::max(scale, std::abs(theta_A(z, v, eps).value));
        }
    return scale;
}

// An effective divisor in the polarisation class: the translate of C_A by
// a fixed shift, evaluated through theta_A(v - shift).
struct DivisorHandle {
    SiegelMatrix z;
    TorusPoint shift;

    ThetaValue value(const cvec2& v, double eps) const { return theta_A(z, v - shift.v, eps); }
    std::array<ThetaValue, 2> gradient(const cvec2& v, double eps) const {
        return theta_A_gradient(z, v - shift.v, eps);
    }
};

// Census of theta_A over the sixteen 2-torsion points.
struct CensusResult {
    std::vector<RealCharacteristic> on_points;   // |theta_A| below threshold
    std::vector<RealCharacteristic> off_points;  // the rest
    std::vector<ThetaValue> values;              // all 16, in enumeration order
    std::vector<int> on_flags;                   // 1 where on, aligned with values
    double scale = 0.0;                          // divisor_scale(z)
    double threshold = 0.0;                      // 1e-6 * scale
    double separation_ratio = 0.0;               // min off / max on; inf if clean
};

// Classifies each 2-torsion point as on or off C_A with threshold
// 1e-6 * scale and certifies the classification by the separation ratio
// min |off| / max |on| (infinite when every on-value is below its certified
// tail bound).  A ratio under 1e3 means Z sits too close to a locus where
// the on/off split degenerates: SeparationFailure carries the raw values.
inline CensusResult two_torsion_census(const SiegelMatrix& z, double eps) {
    CensusResult res;
    res.scale = divisor_scale(z, eps);
    res.threshold = 1e-6 * res.scale;
    double max_on = 0.0, max_on_tail = 0.0;
    double min_off = std::numeric_limits<double>::infinity();
    for (const RealCharacteristic& ch : two_torsion_points()) {
        cvec2 x = two_torsion_vector(z, ch);
        ThetaValue t = theta_A(z, x, eps);
        double mag = std::abs(t.value);
        bool on = mag < res.threshold;
        res.values.push_back(t);
        res.on_flags.push_back(on ? 1 : 0);
        if (on) {
            res.on_points.push_back(ch);
            max_on = std::max(max_on, mag);
            max_on_tail = std::max(max_on_tail, t.tail_bound);
        } else {
            res.off_points.push_back(ch);
            min_off = std::min(min_off, mag);
        }
    }
    if (res.on_points.empty() || max_on <= max_on_tail)
        res.separation_ratio = std::numeric_limits<double>::infinity();
    else
        res.separation_ratio = min_off / max_on;
    if (res.separation_ratio < 1e3) {
        std::vector<double> raw;
        for (const ThetaValue& t : res.values) raw.push_back(std::abs(t.value));
        throw SeparationFailure("two_torsion_census: separation ratio " +
                                    std::to_string(res.separation_ratio) +
                                    " < 1e3; Z too close to a census-degenerate locus",
                                raw);
    }
    return res;
}

// The nine translates of C_A by the kernel K(L), base divisor first.
// Translating by K(L) permutes nothing linearly equivalent away: all nine
// lie in the same polarisation class but are pairwise distinct divisors.
inline std::vector<DivisorHandle> kernel_translates(const SiegelMatrix& z) {
    std::vector<DivisorHandle> out;
    for (const TorusPoint& p : polarization_kernel(z)) out.push_back({z, p});
    return out;
}

// ---------------------------------------------------------------------------
// Product locus Z = diag(tau1, tau2)
// ---------------------------------------------------------------------------

// One-dimensional factors of theta_A at a product point.  Truncation at
// |l| <= 25 leaves a tail far below 1e-300 for Im tau >= 0.3 and arguments
// in the fundamental cell, so both factors are exact to double precision.
inline cdouble product_factor_f(cdouble tau1, cdouble v1) {
    std::complex<long double> acc = 0.0;
    for (int l = -25; l <= 25; ++l) {
        cdouble e = cdouble(0.0, detail::kPi) * (double(l) * double(l) * tau1) +
                    cdouble(0.0, detail::kTwoPi) * (double(l) * v1);
        acc += std::exp(e);
    }
    return static_cast<cdouble>(acc);
}

inline cdouble product_factor_g(cdouble tau2, cdouble v2) {
    std::complex<long double> acc = 0.0;
    for (int l = -25; l <= 25; ++l) {
        double qm = l - 1.0 / 3.0, qp = l + 1.0 / 3.0;
        cdouble em = cdouble(0.0, detail::kPi) * (qm * qm * tau2) +
                     cdouble(0.0, detail::kTwoPi) * (qm * v2);
        cdouble ep = cdouble(0.0, detail::kPi) * (qp * qp * tau2) +
                     cdouble(0.0, detail::kTwoPi) * (qp * v2);
        acc += std::exp(em) - std::exp(ep);
    }
    return static_cast<cdouble>(acc);
}

// Everything the product-case verification measures.  Components are the
// one F-copy {v1 = (1+tau1)/2} and the three E-copies {v2 = 0, 3/2, tau2/2};
// the node sits where the F-copy meets the E-copy at v2 = 0.
struct ProductComponentReport {
    double scale = 0.0;
    std::array<double, 4> component_max{};   // max |theta_A| along each component
    double off_component_min = 0.0;          // min |theta_A| off all components
    double factorization_max = 0.0;          // max |theta_A - f g| on a 10x10 grid
    double node_gradient_norm = 0.0;         // |grad theta_A| at ((1+tau1)/2, 0)
    bool intersections_two_torsion = true;   // F-copy meets E-copies in 2-torsion
    std::array<cdouble, 3> e_levels{};       // the three v2 levels
    cdouble f_level{};                       // the v1 level
};

// Verifies the decomposition of C_A at a product point.  Throws
// ComponentResidualTooLarge if theta_A fails to vanish along a claimed
// component (relative to scale), which would falsify the factorisation.
inline ProductComponentReport product_components(cdouble tau1, cdouble tau2, double eps) {
    const SiegelMatrix z = make_siegel(tau1, 0.0, tau2);
    ProductComponentReport rep;
    rep.scale = divisor_scale(z, eps);
    rep.f_level = 0.5 * (1.0 + tau1);
    rep.e_levels = {cdouble(0.0), cdouble(1.5), 0.5 * tau2};

    Rng rng(mix_seed(0x5D1E8C4B7A3F9260ULL));
    constexpr int kSamples = 100;

    // F-copy: v1 pinned, v2 sweeps its fundamental cell 3 Z + tau2 Z.
    double worst = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        cdouble v2 = 3.0 * rng.uniform() + tau2 * rng.uniform();
        worst = std::max(worst, std::abs(theta_A(z, {rep.f_level, v2}, eps).value));
    }
    rep.component_max[0] = worst;

    // E-copies: v2 pinned at each level, v1 sweeps its cell Z + tau1 Z.
    for (int c = 0; c < 3; ++c) {
        worst = 0.0;
        for (int i = 0; i < kSamples; ++i) {
            cdouble v1 = rng.uniform() + tau1 * rng.uniform();
            worst = std::max(worst, std::abs(theta_A(z, {v1, rep.e_levels[c]}, eps).value));
        }
        rep.component_max[c + 1] = worst;
    }

    for (double m : rep.component_max)
        if (m > 1e-10 * rep.scale)
            throw ComponentResidualTooLarge(
                "product_components: |theta_A| = " + std::to_string(m) +
                " on a claimed component exceeds 1e-10 * scale");

    // Off-component: rejection-sample points staying a fixed torus distance
    // away from every component; theta_A must stay uniformly large there.
    auto torus_dist_1d = [](cdouble delta, double p1, cdouble p2) {
        // Distance from delta to the lattice p1 Z + p2 Z in C, via lattice
        // coordinates delta = b p1 + a p2 and a scan of the 9 nearest cells.
        double a = delta.imag() / p2.imag();
        double b = (delta.real() - a * p2.real()) / p1;
        double best = 1e300;
        for (int da = -1; da <= 1; ++da)
            for (int db = -1; db <= 1; ++db) {
                double an = a - std::round(a) + da;
                double bn = b - std::round(b) + db;
                best = std::min(best, std::abs(bn * p1 + an * p2));
            }
        return best;
    };
    double off_min = 1e300;
    int accepted = 0;
    while (accepted < kSamples) {
        cdouble v1 = rng.uniform() + tau1 * rng.uniform();
        cdouble v2 = 3.0 * rng.uniform() + tau2 * rng.uniform();
        double d1 = torus_dist_1d(v1 - rep.f_level, 1.0, tau1);
        double d2 = 1e300;
        for (const cdouble& lev : rep.e_levels)
            d2 = std::min(d2, torus_dist_1d(v2 - lev, 3.0, tau2));
        if (d1 < 0.2 || d2 < 0.2) continue;
        ++accepted;
        off_min = std::min(off_min, std::abs(theta_A(z, {v1, v2}, eps).value));
    }
    rep.off_component_min = off_min;

    // Factorisation check on a deterministic 10x10 grid (10 points in each
    // factor cell, low-discrepancy offsets).
    double fac_worst = 0.0;
    for (int j = 0; j < 10; ++j) {
        double aj = (j + 0.5) / 10.0;
        double bj = std::fmod(0.618033988749895 * j + 0.17, 1.0);
        cdouble v1 = aj + tau1 * bj;
        for (int k = 0; k < 10; ++k) {
            double ak = (k + 0.5) / 10.0;
            double bk = std::fmod(0.618033988749895 * k + 0.43, 1.0);
            cdouble v2 = 3.0 * ak + tau2 * bk;
            cdouble direct = theta_A(z, {v1, v2}, eps).value;
            cdouble split = product_factor_f(tau1, v1) * product_factor_g(tau2, v2);
            fac_worst = std::max(fac_worst, std::abs(direct - split));
        }
    }
    rep.factorization_max = fac_worst;

    // The node: F-copy meets the v2 = 0 E-copy at ((1+tau1)/2, 0), where the
    // gradient of the product vanishes.
    auto grad = theta_A_gradient(z, {rep.f_level, cdouble(0.0)}, eps);
    rep.node_gradient_norm = std::hypot(std::abs(grad[0].value), std::abs(grad[1].value));

    // Intersections of the F-copy with the E-copies: ((1+tau1)/2, lev) must
    // be 2-torsion, i.e. all real coordinates in {0, 1/2} mod 1.
    for (const cdouble& lev : rep.e_levels) {
        auto [x, y] = to_real_coords(z, {rep.f_level, lev});
        for (double u : {x[0], x[1], y[0], y[1]}) {
            double f = u - std::floor(u);
            double d = std::min({std::abs(f), std::abs(f - 0.5), std::abs(f - 1.0)});
            if (d > 1e-9) rep.intersections_two_torsion = false;
        }
    }
    return rep;
}

} // namespace theta13

#endif
