// Points on the torus A_Z = C^2 / (Z Z^2 + D Z^2), D = diag(1, 3).
//
// Every v in C^2 decomposes uniquely as v = Z x + D y with real 2-vectors
// x, y; in closed form x = Y^{-1} Im v and y = D^{-1}(Re v - X x).  Lattice
// reduction, the sixteen 2-torsion points, their parity under the odd
// symmetric theta divisor, and the 9-element kernel K(L) of the isogeny
// attached to the polarisation all live here.

#ifndef THETA13_TORUS_HPP
#define THETA13_TORUS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "theta13/errors.hpp"
#include "theta13/siegel.hpp"

namespace theta13 {

inline constexpr double kD1 = 1.0;
inline constexpr double kD2 = 3.0;

// D * y for the fixed polarisation D = diag(1, 3).
inline rvec2 d_apply(const rvec2& y) { return {kD1 * y[0], kD2 * y[1]}; }
inline cvec2 d_apply_c(const rvec2& y) { return {cdouble(kD1 * y[0], 0.0), cdouble(kD2 * y[1], 0.0)}; }

// A torus point carries both its complex representative and the real
// lattice coordinates v = Z x + D y.
struct TorusPoint {
    cvec2 v{};
    rvec2 x{};
    rvec2 y{};
};

// Real coordinates (x, y) of v with respect to the period matrix (Z, D).
inline std::pair<rvec2, rvec2> to_real_coords(const SiegelMatrix& z, const cvec2& v) {
    rvec2 im = imag_part(v);
    rvec2 x = z.yinv.apply(im);
    rvec2 re = real_part(v);
    // Re v = X x + D y with X = Re Z.
    double xx0 = z.z11.real() * x[0] + z.z12.real() * x[1];
    double xx1 = z.z12.real() * x[0] + z.z22.real() * x[1];
    rvec2 y = {(re[0] - xx0) / kD1, (re[1] - xx1) / kD2};
    return {x, y};
}

inline cvec2 from_real_coords(const SiegelMatrix& z, const rvec2& x, const rvec2& y) {
    return z.zx(x) + d_apply_c(y);
}

inline TorusPoint make_torus_point(const SiegelMatrix& z, const cvec2& v) {
    auto [x, y] = to_real_coords(z, v);
    return {v, x, y};
}

inline TorusPoint make_torus_point_from_coords(const SiegelMatrix& z, const rvec2& x, const rvec2& y) {
    return {from_real_coords(z, x, y), x, y};
}

namespace detail {

// Fractional part in [0, 1) with the tie rule: values within 1e-12 of the
// upper cell wall are wrapped to 0 so that reduction is stable against
// roundoff on exact lattice points.
inline double reduce_unit(double u, long& integer_part) {
    double f = std::floor(u);
    double frac = u - f;
    long m = static_cast<long>(f);
    if (frac > 1.0 - 1e-12) {
        frac = 0.0;
        m += 1;
    }
    integer_part = m;
    return frac;
}

struct Reduction {
    TorusPoint reduced;
    std::array<long, 2> m;  // Z-lattice integer part
    std::array<long, 2> n;  // D-lattice integer part
};

inline Reduction reduce_with_offsets(const SiegelMatrix& z, const cvec2& v) {
    auto [x, y] = to_real_coords(z, v);
    Reduction r;
    rvec2 xr, yr;
    xr[0] = reduce_unit(x[0], r.m[0]);
    xr[1] = reduce_unit(x[1], r.m[1]);
    yr[0] = reduce_unit(y[0], r.n[0]);
    yr[1] = reduce_unit(y[1], r.n[1]);
    r.reduced = make_torus_point_from_coords(z, xr, yr);
    return r;
}

// Reduction into the centered cell [-1/2, 1/2)^4, used internally by the
// theta evaluators: the centered representative minimises |Im v_red| and
// with it the lattice-sum radius.  Public reduction stays on [0, 1)^4.
inline Reduction reduce_centered(const SiegelMatrix& z, const cvec2& v) {
    auto [x, y] = to_real_coords(z, v);
    Reduction r;
    rvec2 xr, yr;
    for (int k = 0; k < 2; ++k) {
        r.m[k] = std::lround(x[k]);
        xr[k] = x[k] - double(r.m[k]);
        r.n[k] = std::lround(y[k]);
        yr[k] = y[k] - double(r.n[k]);
    }
    r.reduced = make_torus_point_from_coords(z, xr, yr);
    return r;
}

} // namespace detail

// Representative of v in the fundamental cell: both coordinate pairs in
// [0, 1)^2, ties at the upper wall rounded down to 0.
inline TorusPoint reduce_mod_lattice(const SiegelMatrix& z, const cvec2& v) {
    return detail::reduce_with_offsets(z, v).reduced;
}

// A theta characteristic with real 2-vector entries c1, c2.
struct RealCharacteristic {
    rvec2 c1{};
    rvec2 c2{};
};

// The sixteen 2-torsion points of A_Z, as half-integer characteristics
// (c1; c2) standing for the point Z c1 + D c2.  Enumeration order is
// lexicographic in (c1[0], c1[1], c2[0], c2[1]) over {0, 1/2}.
inline std::vector<RealCharacteristic> two_torsion_points() {
    std::vector<RealCharacteristic> out;
    out.reserve(16);
    for (int a0 = 0; a0 < 2; ++a0)
        for (int a1 = 0; a1 < 2; ++a1)
            for (int b0 = 0; b0 < 2; ++b0)
                for (int b1 = 0; b1 < 2; ++b1)
                    out.push_back({{0.5 * a0, 0.5 * a1}, {0.5 * b0, 0.5 * b1}});
    return out;
}

inline cvec2 two_torsion_vector(const SiegelMatrix& z, const RealCharacteristic& ch) {
    return from_real_coords(z, ch.c1, ch.c2);
}

namespace detail {
inline int half_integer_twice(double c, const char* what) {
    // Any half-integer is accepted and reduced mod 1: parity is a function
    // of the 2-torsion point, and integer characteristic shifts name the
    // same point.
    double twice = 2.0 * c;
    long n = std::lround(twice);
    if (std::abs(twice - double(n)) > 1e-12)
        throw NotHalfInteger(std::string(what) + ": entry " + std::to_string(c) +
                             " is not a half-integer");
    return static_cast<int>(((n % 2) + 2) % 2);
}
} // namespace detail

// Parity e(c1, c2) = (-1)^{4 c1 . c2} of a half-integer characteristic,
// evaluated in exact integer arithmetic.  +1 = even, -1 = odd.
inline int parity(const RealCharacteristic& ch) {
    int a0 = detail::half_integer_twice(ch.c1[0], "parity");
    int a1 = detail::half_integer_twice(ch.c1[1], "parity");
    int b0 = detail::half_integer_twice(ch.c2[0], "parity");
    int b1 = detail::half_integer_twice(ch.c2[1], "parity");
    return ((a0 * b0 + a1 * b1) % 2 == 0) ? +1 : -1;
}

// K(L): kernel of the isogeny A -> Pic^0(A) attached to the (1,3)
// polarisation.  The nine points Z(0, a/3) + D(0, b/3) = Z(0, a/3) + (0, b),
// a, b in {0, 1, 2}, enumerated in lexicographic (a, b) order so the group
// zero comes first.  The cyclic subgroup K(L)_1 = {0, omega, -omega} with
// omega = Z(0, 1/3) consists of the b = 0 column.
inline std::vector<TorusPoint> polarization_kernel(const SiegelMatrix& z) {
    std::vector<TorusPoint> out;
    out.reserve(9);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            out.push_back(make_torus_point_from_coords(z, {0.0, a / 3.0}, {0.0, b / 3.0}));
    return out;
}

// omega = Z (0, 1/3), the distinguished generator of K(L)_1.
inline cvec2 omega_vector(const SiegelMatrix& z) { return z.zx(rvec2{0.0, 1.0 / 3.0}); }

} // namespace theta13

#endif
