// Small fixed-size linear algebra used throughout the library: real/complex
// 2-vectors, real symmetric 2x2 matrices with closed-form spectra, and a
// Jacobi eigensolver for 3x3 Hermitian matrices (used for singular values
// of the 3-row sample matrices in the eigenspace-dimension computation).

#ifndef THETA13_LINALG_HPP
#define THETA13_LINALG_HPP

#include <array>
#include <cmath>
#include <complex>

#include "theta13/errors.hpp"

namespace theta13 {

using cdouble = std::complex<double>;
using rvec2 = std::array<double, 2>;
using cvec2 = std::array<cdouble, 2>;

inline cvec2 to_cvec2(const rvec2& a) { return {cdouble(a[0], 0.0), cdouble(a[1], 0.0)}; }

inline cvec2 operator+(const cvec2& a, const cvec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline cvec2 operator-(const cvec2& a, const cvec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline cvec2 operator-(const cvec2& a) { return {-a[0], -a[1]}; }
inline cvec2 operator*(cdouble s, const cvec2& a) { return {s * a[0], s * a[1]}; }

inline rvec2 operator+(const rvec2& a, const rvec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline rvec2 operator-(const rvec2& a, const rvec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline rvec2 operator-(const rvec2& a) { return {-a[0], -a[1]}; }
inline rvec2 operator*(double s, const rvec2& a) { return {s * a[0], s * a[1]}; }

// Plain bilinear dot product (no conjugation); conjugate explicitly at the
// call site when a Hermitian pairing is intended.
inline cdouble dot(const cvec2& a, const cvec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double dot(const rvec2& a, const rvec2& b) { return a[0] * b[0] + a[1] * b[1]; }

inline cvec2 conj(const cvec2& a) { return {std::conj(a[0]), std::conj(a[1])}; }
inline rvec2 real_part(const cvec2& a) { return {a[0].real(), a[1].real()}; }
inline rvec2 imag_part(const cvec2& a) { return {a[0].imag(), a[1].imag()}; }

inline double norm2(const rvec2& a) { return std::hypot(a[0], a[1]); }
inline double norm2(const cvec2& a) { return std::sqrt(std::norm(a[0]) + std::norm(a[1])); }

// Real symmetric 2x2 matrix [[a, b], [b, d]].
struct sym2 {
    double a = 0.0, b = 0.0, d = 0.0;

    rvec2 apply(const rvec2& x) const { return {a * x[0] + b * x[1], b * x[0] + d * x[1]}; }
    cvec2 apply(const cvec2& x) const { return {a * x[0] + b * x[1], b * x[0] + d * x[1]}; }

    double det() const { return a * d - b * b; }
    double trace() const { return a + d; }

    // Eigenvalues in closed form; for a symmetric matrix both are real.
    double eig_min() const {
        double mean = 0.5 * (a + d);
        double disc = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
        return mean - disc;
    }
    double eig_max() const {
        double mean = 0.5 * (a + d);
        double disc = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
        return mean + disc;
    }

    sym2 inverse() const {
        double dt = det();
        if (dt == 0.0) throw InvalidInput("sym2::inverse: singular matrix");
        return {d / dt, -b / dt, a / dt};
    }
};

using cmat3 = std::array<std::array<cdouble, 3>, 3>;

// Eigenvalues of a 3x3 Hermitian matrix by cyclic complex Jacobi rotations.
// Ascending order. Convergence is quadratic; 64 sweeps is far beyond need.
inline std::array<double, 3> hermitian_eigenvalues(cmat3 m) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(m[0][1]) + std::abs(m[0][2]) + std::abs(m[1][2]);
        double diag = std::abs(m[0][0]) + std::abs(m[1][1]) + std::abs(m[2][2]);
        if (off <= 1e-300 + 1e-17 * diag) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                cdouble apq = m[p][q];
                if (std::abs(apq) == 0.0) continue;
                double app = m[p][p].real();
                double aqq = m[q][q].real();
                // Unitary rotation in the (p,q) plane annihilating m[p][q]:
                // diagonalize [[app, apq], [conj(apq), aqq]].
                double tau = (aqq - app) / (2.0 * std::abs(apq));
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                cdouble phase = apq / std::abs(apq);
                cdouble s = t * c * phase;
                cmat3 r = m;
                for (int k = 0; k < 3; ++k) {
                    cdouble mkp = m[k][p], mkq = m[k][q];
                    r[k][p] = c * mkp - std::conj(s) * mkq;
                    r[k][q] = s * mkp + c * mkq;
                }
                m = r;
                for (int k = 0; k < 3; ++k) {
                    cdouble mpk = m[p][k], mqk = m[q][k];
                    r[p][k] = c * mpk - s * mqk;
                    r[q][k] = std::conj(s) * mpk + c * mqk;
                }
                m = r;
            }
        }
    }
    std::array<double, 3> ev = {m[0][0].real(), m[1][1].real(), m[2][2].real()};
    if (ev[0] > ev[1]) std::swap(ev[0], ev[1]);
    if (ev[1] > ev[2]) std::swap(ev[1], ev[2]);
    if (ev[0] > ev[1]) std::swap(ev[0], ev[1]);
    return ev;
}

// Singular values of a 3xN complex matrix (rows[i] has N entries) by
// one-sided Jacobi: unitary row mixes annihilate the pairwise inner
// products, after which the singular values are the row norms.  Working on
// the matrix itself (never on the Gram matrix, whose tiny eigenvalues
// drown at sqrt(machine-eps) relative) keeps the floor of the small
// singular values near machine epsilon times the largest one, which the
// rank guard band below relies on.  Descending order.
template <std::size_t N>
inline std::array<double, 3> singular_values_3xN(std::array<std::array<cdouble, N>, 3> rows) {
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                long double app = 0.0, aqq = 0.0;
                std::complex<long double> apq = 0.0;
                for (std::size_t k = 0; k < N; ++k) {
                    app += std::norm(std::complex<long double>(rows[p][k]));
                    aqq += std::norm(std::complex<long double>(rows[q][k]));
                    apq += std::complex<long double>(rows[p][k]) *
                           std::conj(std::complex<long double>(rows[q][k]));
                }
                long double mag = std::abs(apq);
                if (mag <= 1e-300 + 1e-18L * std::sqrt(app * aqq)) continue;
                rotated = true;
                // Rotation diagonalising [[app, apq], [conj(apq), aqq]],
                // applied to the rows so the Gram block becomes diagonal.
                double tau = static_cast<double>((aqq - app) / (2.0L * mag));
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                cdouble phase = static_cast<cdouble>(apq / mag);
                cdouble s = t * c * phase;
                for (std::size_t k = 0; k < N; ++k) {
                    cdouble rp = rows[p][k], rq = rows[q][k];
                    rows[p][k] = c * rp - s * rq;
                    rows[q][k] = std::conj(s) * rp + c * rq;
                }
            }
        }
        if (!rotated) break;
    }
    std::array<double, 3> sv;
    for (int i = 0; i < 3; ++i) {
        long double n = 0.0;
        for (std::size_t k = 0; k < N; ++k) n += std::norm(std::complex<long double>(rows[i][k]));
        sv[i] = static_cast<double>(std::sqrt(n));
    }
    if (sv[0] < sv[1]) std::swap(sv[0], sv[1]);
    if (sv[1] < sv[2]) std::swap(sv[1], sv[2]);
    if (sv[0] < sv[1]) std::swap(sv[0], sv[1]);
    return sv;
}

// Numerical rank with an explicit guard band: singular values below
// rel_zero * s_max count as zero, but any value falling inside the band
// [band_lo, band_hi] * s_max is considered unresolvable and rejected.
inline int rank_with_guard(const std::array<double, 3>& sv, double rel_zero = 1e-8,
                           double band_lo = 1e-10, double band_hi = 1e-6) {
    double smax = sv[0];
    if (smax == 0.0) return 0;
    int rank = 0;
    for (double s : sv) {
        double rel = s / smax;
        if (rel > band_lo && rel < band_hi)
            throw RankAmbiguous("singular value in guard band: rel=" + std::to_string(rel));
        if (rel >= rel_zero) ++rank;
    }
    return rank;
}

} // namespace theta13

#endif
