// Certified zero counting and location for theta_A restricted to complex
// lines in C^2.
//
// For a line t -> base + t * dir the restriction f(t) = theta_A(base + t dir)
// is entire, and the number of zeros inside a rectangle in the t-plane is
// the winding integral (1 / 2 pi i) oint f'/f dt.  Edges are integrated by
// composite 10-point Gauss-Legendre rules, halved adaptively until the
// total stabilises; the result is accepted only within 0.1 of an integer,
// otherwise the rectangle is subdivided along interior lines chosen (by a
// scan of |f|) to stay clear of zeros.  Individual zeros are isolated by
// bisection down to count 1 and polished by Newton iteration on f.
//
// Window boundaries are screened for nearby zeros; if the screen trips, the
// window corner is jittered by a deterministic offset in [1e-4, 3e-4] and
// the whole computation retried, so that counting and location always refer
// to the same resolved window.

#ifndef THETA13_ZERO_FINDER_HPP
#define THETA13_ZERO_FINDER_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "theta13/divisor.hpp"
#include "theta13/errors.hpp"
#include "theta13/sampling.hpp"
#include "theta13/siegel.hpp"
#include "theta13/theta.hpp"
#include "theta13/torus.hpp"

namespace theta13 {

// Axis-aligned rectangle in the t-plane of a line parameterisation.
struct WindowRect {
    cdouble corner{};  // lower-left corner
    double width = 0.0;
    double height = 0.0;

    bool contains(cdouble t, double slack = 0.0) const {
        return t.real() >= corner.real() - slack && t.real() <= corner.real() + width + slack &&
               t.imag() >= corner.imag() - slack && t.imag() <= corner.imag() + height + slack;
    }
};

// A complex line on the torus with a search window for the parameter t.
struct ComplexLine {
    TorusPoint base;
    cvec2 direction{};  // unit-normalised by make_complex_line
    WindowRect window{};
};

inline ComplexLine make_complex_line(const SiegelMatrix& z, const cvec2& base_v,
                                     const cvec2& direction, const WindowRect& window) {
    double n = norm2(direction);
    if (!(n > 0.0)) throw InvalidInput("make_complex_line: zero direction");
    cvec2 d = {direction[0] / n, direction[1] / n};
    return {make_torus_point(z, base_v), d, window};
}

// Binds Z, the working precision, and the magnitude scale of theta_A so
// that repeated window operations reuse one scale computation.
struct CurveEvaluator {
    SiegelMatrix z;
    double eps = 1e-12;
    double scale = 0.0;

    static CurveEvaluator make(const SiegelMatrix& z, double eps) {
        return {z, eps, divisor_scale(z, eps)};
    }

    // f(t) and f'(t) for the restriction of theta_A to the line.
    void line_eval(const ComplexLine& line, cdouble t, cdouble& f, cdouble& fp) const {
        cvec2 p = line.base.v + t * line.direction;
        ThetaWithGradient tg = theta_A_with_gradient(z, p, eps);
        f = tg.value.value;
        fp = tg.gradient[0].value * line.direction[0] + tg.gradient[1].value * line.direction[1];
    }

    cdouble line_value(const ComplexLine& line, cdouble t) const {
        cvec2 p = line.base.v + t * line.direction;
        return theta_A(z, p, eps).value;
    }
};

namespace detail {

// 10-point Gauss-Legendre nodes and weights on [-1, 1].
inline constexpr std::array<double, 5> kGlNode = {
    0.14887433898163121088, 0.43339539412924719080, 0.67940956829902440623,
    0.86506336668898451073, 0.97390652851717172008};
inline constexpr std::array<double, 5> kGlWeight = {
    0.29552422471475287017, 0.26926671930999635509, 0.21908636251598204400,
    0.14945134915058059315, 0.06667134430868813759};

// Composite GL10 approximation of int_a^b f'/f dt over nseg equal segments.
inline cdouble edge_integral(const CurveEvaluator& ev, const ComplexLine& line, cdouble a,
                             cdouble b, int nseg) {
    cdouble total = 0.0;
    cdouble step = (b - a) / double(nseg);
    for (int s = 0; s < nseg; ++s) {
        cdouble mid = a + (s + 0.5) * step;
        cdouble half = 0.5 * step;
        for (int k = 0; k < 5; ++k) {
            for (double sign : {-1.0, 1.0}) {
                cdouble t = mid + sign * kGlNode[k] * half;
                cdouble f, fp;
                ev.line_eval(line, t, f, fp);
                if (std::abs(f) == 0.0) throw BoundaryZero("winding integrand hit an exact zero");
                total += kGlWeight[k] * (fp / f) * half;
            }
        }
    }
    return total;
}

// Locally adaptive edge integral by recursive bisection: a segment is
// accepted when the two-half refinement agrees with it to tol, otherwise
// the halves are refined independently (with half the budget each), which
// concentrates evaluations near any zero of f close to the edge.  ok =
// false when the depth cap is reached, which in practice means a zero sits
// (too) close to this edge.
inline cdouble edge_bisect(const CurveEvaluator& ev, const ComplexLine& line, cdouble a, cdouble b,
                           cdouble whole, double tol, int depth, bool& ok) {
    cdouble mid = 0.5 * (a + b);
    cdouble left = edge_integral(ev, line, a, mid, 1);
    cdouble right = edge_integral(ev, line, mid, b, 1);
    if (std::abs(left + right - whole) < tol) return left + right;
    if (depth >= 16) {
        ok = false;
        return left + right;
    }
    return edge_bisect(ev, line, a, mid, left, 0.5 * tol, depth + 1, ok) +
           edge_bisect(ev, line, mid, b, right, 0.5 * tol, depth + 1, ok);
}

inline cdouble edge_integral_adaptive(const CurveEvaluator& ev, const ComplexLine& line, cdouble a,
                                      cdouble b, double tol, bool& ok) {
    ok = true;
    cdouble whole = edge_integral(ev, line, a, b, 1);
    return edge_bisect(ev, line, a, b, whole, tol, 0, ok);
}

// Minimum of |f| over a uniform scan of the segment [a, b].
inline double segment_min_abs(const CurveEvaluator& ev, const ComplexLine& line, cdouble a,
                              cdouble b, int samples) {
    double best = 1e300;
    for (int i = 0; i <= samples; ++i) {
        cdouble t = a + (double(i) / samples) * (b - a);
        best = std::min(best, std::abs(ev.line_value(line, t)));
    }
    return best;
}

inline std::array<cdouble, 4> rect_corners(const WindowRect& r) {
    cdouble c = r.corner;
    return {c, c + cdouble(r.width, 0.0), c + cdouble(r.width, r.height), c + cdouble(0.0, r.height)};
}

inline double boundary_min_abs(const CurveEvaluator& ev, const ComplexLine& line,
                               const WindowRect& r, int per_edge) {
    auto c = rect_corners(r);
    double best = 1e300;
    for (int e = 0; e < 4; ++e)
        best = std::min(best, segment_min_abs(ev, line, c[e], c[(e + 1) % 4], per_edge));
    return best;
}

// Deterministic jitter offsets with amplitudes in [1e-4, 3e-4]; attempt 0
// is the unjittered window.
inline constexpr std::array<std::array<double, 2>, 5> kJitter = {{{0.0, 0.0},
                                                                  {1.7e-4, 2.3e-4},
                                                                  {-2.9e-4, 1.1e-4},
                                                                  {2.2e-4, -2.7e-4},
                                                                  {-1.4e-4, -1.9e-4}}};

} // namespace detail

// Resolve the search window: screen the boundary for nearby zeros of f and
// jitter the corner (amplitude 1e-4..3e-4, deterministic sequence) until the
// screen passes.  Throws BoundaryZero after 5 attempts.  All counting and
// location for a line must run on the same resolved window.
inline WindowRect resolve_window(const CurveEvaluator& ev, const ComplexLine& line) {
    for (const auto& j : detail::kJitter) {
        WindowRect r = line.window;
        r.corner += cdouble(j[0], j[1]);
        if (detail::boundary_min_abs(ev, line, r, 48) > 1e-6 * ev.scale) return r;
    }
    throw BoundaryZero("resolve_window: a zero of theta_A hugs the window boundary");
}

namespace detail {

// Split fraction along one axis chosen so the induced interior line stays
// clear of zeros; falls back to the best-scoring candidate.
inline double choose_split(const CurveEvaluator& ev, const ComplexLine& line, const WindowRect& r,
                           bool vertical) {
    constexpr std::array<double, 7> fractions = {0.5, 0.47, 0.53, 0.44, 0.56, 0.41, 0.59};
    double best_frac = 0.5, best_min = -1.0;
    for (double f : fractions) {
        cdouble a, b;
        if (vertical) {  // vertical line at corner.x + f * width
            a = r.corner + cdouble(f * r.width, 0.0);
            b = a + cdouble(0.0, r.height);
        } else {
            a = r.corner + cdouble(0.0, f * r.height);
            b = a + cdouble(r.width, 0.0);
        }
        double m = segment_min_abs(ev, line, a, b, 32);
        if (m > 5e-3 * ev.scale) return f;
        if (m > best_min) {
            best_min = m;
            best_frac = f;
        }
    }
    return best_frac;
}

inline int count_in_rect(const CurveEvaluator& ev, const ComplexLine& line, const WindowRect& r,
                         int depth) {
    if (depth > 12)
        throw QuadratureStall("count_zeros: subdivision exceeded depth 12");
    auto corners = rect_corners(r);
    bool stable = true;
    cdouble total = 0.0;
    for (int e = 0; e < 4 && stable; ++e) {
        bool ok = false;
        // Per-edge tolerance: a quarter of the 0.05 winding-number budget,
        // expressed in raw-integral units (winding * 2 pi).
        total += edge_integral_adaptive(ev, line, corners[e], corners[(e + 1) % 4],
                                        0.0125 * kTwoPi, ok);
        stable = ok;
    }
    if (stable) {
        cdouble winding = total / cdouble(0.0, 2.0 * kPi);
        long n = std::lround(winding.real());
        if (n >= 0 && std::abs(winding - cdouble(double(n), 0.0)) < 0.1) return static_cast<int>(n);
    }
    // Quadrature would not settle on an integer: split into four quadrants
    // along interior lines screened to avoid zeros, and recurse.
    double fx = choose_split(ev, line, r, true);
    double fy = choose_split(ev, line, r, false);
    double w1 = fx * r.width, h1 = fy * r.height;
    WindowRect q[4] = {
        {r.corner, w1, h1},
        {r.corner + cdouble(w1, 0.0), r.width - w1, h1},
        {r.corner + cdouble(0.0, h1), w1, r.height - h1},
        {r.corner + cdouble(w1, h1), r.width - w1, r.height - h1},
    };
    int sum = 0;
    for (const WindowRect& s : q) sum += count_in_rect(ev, line, s, depth + 1);
    return sum;
}

// Newton polish inside a rectangle known to contain exactly one zero.
inline cdouble newton_in_rect(const CurveEvaluator& ev, const ComplexLine& line,
                              const WindowRect& r) {
    const double slack = 1e-9 * (r.width + r.height + 1.0);
    const std::array<cdouble, 3> starts = {
        r.corner + cdouble(0.5 * r.width, 0.5 * r.height),
        r.corner + cdouble(0.62 * r.width, 0.41 * r.height),
        r.corner + cdouble(0.37 * r.width, 0.58 * r.height),
    };
    for (const cdouble& t0 : starts) {
        cdouble t = t0;
        bool converged = false;
        for (int it = 0; it < 80; ++it) {
            cdouble f, fp;
            ev.line_eval(line, t, f, fp);
            if (std::abs(fp) == 0.0) break;
            cdouble step = f / fp;
            t -= step;
            if (std::abs(step) < 1e-12 * std::max(1.0, std::abs(t))) {
                converged = true;
                break;
            }
        }
        if (!converged) continue;
        if (!r.contains(t, slack)) continue;  // converged to a zero outside the box
        // Residual check at the reduced representative of the located point,
        // so the tolerance is meaningful relative to the cell-wide scale.
        cvec2 p = line.base.v + t * line.direction;
        TorusPoint red = reduce_mod_lattice(ev.z, p);
        if (std::abs(theta_A(ev.z, red.v, ev.eps).value) < 1e-10 * ev.scale) return t;
    }
    throw NewtonDivergence("newton_in_rect: no validated root in the isolating rectangle");
}

// Split r across its longer dimension, clear of zeros, into (r1, r2).
inline std::pair<WindowRect, WindowRect> bisect_rect(const CurveEvaluator& ev,
                                                     const ComplexLine& line, const WindowRect& r) {
    bool vertical = r.width >= r.height;
    double f = choose_split(ev, line, r, vertical);
    WindowRect r1 = r, r2 = r;
    if (vertical) {
        r1.width = f * r.width;
        r2.corner += cdouble(r1.width, 0.0);
        r2.width = r.width - r1.width;
    } else {
        r1.height = f * r.height;
        r2.corner += cdouble(0.0, r1.height);
        r2.height = r.height - r1.height;
    }
    return {r1, r2};
}

// Recursive location.  n is the already-certified zero count of r; only
// one child of each split is re-counted, the other count follows from
// additivity across the (zero-free) split line.  Newton runs only once
// the single zero is isolated in a small rectangle, where its basin
// dominates; a Newton escape triggers further shrinking instead of
// failing outright.
inline void locate_in_rect(const CurveEvaluator& ev, const ComplexLine& line, const WindowRect& r,
                           int n, int depth, std::vector<cdouble>& out) {
    if (n == 0) return;
    if (depth > 40)
        throw QuadratureStall("locate_zeros: bisection exceeded depth 40 (multiple zero?)");
    if (n == 1 && r.width + r.height < 0.3) {
        try {
            out.push_back(newton_in_rect(ev, line, r));
            return;
        } catch (const NewtonDivergence&) {
            if (r.width + r.height < 1e-4) throw;  // genuinely stuck
        }
    }
    auto [r1, r2] = bisect_rect(ev, line, r);
    int n1 = count_in_rect(ev, line, r1, 0);
    if (n1 > n)
        throw QuadratureStall("locate_zeros: child count exceeds parent count");
    locate_in_rect(ev, line, r1, n1, depth + 1, out);
    locate_in_rect(ev, line, r2, n - n1, depth + 1, out);
}

} // namespace detail

// Number of zeros of theta_A restricted to the line inside its (resolved)
// window, by the argument principle.
inline int count_zeros_on_rectangle(const CurveEvaluator& ev, const ComplexLine& line) {
    WindowRect r = resolve_window(ev, line);
    return detail::count_in_rect(ev, line, r, 0);
}

inline int count_zeros_on_rectangle(const ComplexLine& line, const SiegelMatrix& z, double eps) {
    return count_zeros_on_rectangle(CurveEvaluator::make(z, eps), line);
}

// All zeros of theta_A on the line inside its window, each isolated by
// recursive bisection and polished by Newton iteration.  Sorted by real
// part, then imaginary part.  The result always has exactly
// count_zeros_on_rectangle-many entries: both run on the same resolved
// window.
inline std::vector<cdouble> locate_zeros_on_line(const CurveEvaluator& ev,
                                                 const ComplexLine& line) {
    WindowRect r = resolve_window(ev, line);
    std::vector<cdouble> out;
    int n = detail::count_in_rect(ev, line, r, 0);
    detail::locate_in_rect(ev, line, r, n, 0, out);
    std::sort(out.begin(), out.end(), [](cdouble a, cdouble b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

inline std::vector<cdouble> locate_zeros_on_line(const ComplexLine& line, const SiegelMatrix& z,
                                                 double eps) {
    return locate_zeros_on_line(CurveEvaluator::make(z, eps), line);
}

// A batch of points sampled from the curve C_A = {theta_A = 0}.
struct CurveSample {
    std::vector<TorusPoint> points;        // reduced representatives
    std::vector<double> residuals;         // |theta_A| at each point
    std::vector<double> gradient_norms;    // |grad theta_A| at each point
    double scale = 0.0;
    std::uint64_t seed = 0;
};

// Samples n points of C_A by intersecting it with random complex lines
// (deterministic in seed) and keeping every located zero in line order.
// Points whose reduced residual fails the 1e-8 * scale quality gate are
// discarded.  Throws SamplingExhausted if 50 n lines cannot produce n
// accepted points.
inline CurveSample sample_curve_points(const SiegelMatrix& z, int n, std::uint64_t seed,
                                       double eps = 1e-12) {
    CurveEvaluator ev = CurveEvaluator::make(z, eps);
    CurveSample out;
    out.scale = ev.scale;
    out.seed = seed;
    Rng rng(mix_seed(seed ^ 0xA3C59B71E4D2086FULL));
    const long max_lines = 50L * n;
    for (long tried = 0; tried < max_lines && static_cast<int>(out.points.size()) < n; ++tried) {
        rvec2 x = {rng.uniform(), rng.uniform()};
        rvec2 y = {rng.uniform(), rng.uniform()};
        cvec2 base = from_real_coords(z, x, y);
        cvec2 dir = {cdouble(rng.gaussian(), rng.gaussian()), cdouble(rng.gaussian(), rng.gaussian())};
        if (norm2(dir) < 1e-6) continue;
        WindowRect window{cdouble(-0.55, -0.55), 1.1, 1.1};
        ComplexLine line = make_complex_line(z, base, dir, window);
        std::vector<cdouble> roots;
        try {
            roots = locate_zeros_on_line(ev, line);
        } catch (const BoundaryZero&) {
            continue;
        } catch (const QuadratureStall&) {
            continue;
        } catch (const NewtonDivergence&) {
            continue;
        }
        for (const cdouble& t : roots) {
            if (static_cast<int>(out.points.size()) >= n) break;
            cvec2 p = line.base.v + t * line.direction;
            TorusPoint red = reduce_mod_lattice(z, p);
            auto tg = theta_A_with_gradient(z, red.v, eps);
            double resid = std::abs(tg.value.value);
            if (resid >= 1e-8 * ev.scale) continue;  // quality gate
            out.points.push_back(red);
            out.residuals.push_back(resid);
            out.gradient_norms.push_back(
                std::hypot(std::abs(tg.gradient[0].value), std::abs(tg.gradient[1].value)));
        }
    }
    if (static_cast<int>(out.points.size()) < n)
        throw SamplingExhausted("sample_curve_points: could not collect " + std::to_string(n) +
                                " curve points from " + std::to_string(max_lines) + " lines");
    return out;
}

// Gradient statistics over a curve sample; a small minimum relative to
// scale flags (near-)singular points of C_A.
struct SmoothnessStats {
    double min_gradient = 0.0;
    double mean_gradient = 0.0;
    double max_gradient = 0.0;
    double scale = 0.0;
    int count = 0;
};

inline SmoothnessStats smoothness_report(const SiegelMatrix& z, int n, std::uint64_t seed,
                                         double eps = 1e-12) {
    CurveSample s = sample_curve_points(z, n, seed, eps);
    SmoothnessStats st;
    st.scale = s.scale;
    st.count = static_cast<int>(s.gradient_norms.size());
    double mn = 1e300, mx = 0.0, sum = 0.0;
    for (double g : s.gradient_norms) {
        mn = std::min(mn, g);
        mx = std::max(mx, g);
        sum += g;
    }
    st.min_gradient = (st.count > 0) ? mn : 0.0;
    st.max_gradient = mx;
    st.mean_gradient = (st.count > 0) ? sum / st.count : 0.0;
    return st;
}

} // namespace theta13

#endif
