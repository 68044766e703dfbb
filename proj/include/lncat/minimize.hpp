#pragma once

#include <cmath>
#include <utility>

namespace lncat {

struct MinimizeOptions {
    double tol = 1e-10;       ///< stop once the bracket width drops below this
    int max_iterations = 200;
};

struct MinimizeResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Bracket of a minimum: f(inner) <= f(lo) and f(inner) <= f(hi).
struct Bracket {
    double lo, inner, hi;
    double f_lo, f_inner, f_hi;
    bool ok = false;            ///< false if expansion gave up
    bool bimodal = false;       ///< true if two descent directions were seen
};

/// Find a bracket for an interior minimum of f, widening [lo, hi]
/// geometrically on the descending side when the first probes fail.
///
/// If an interior probe sits above both endpoints the objective descends in
/// both directions from it; that is flagged as `bimodal` instead of picking
/// a side.
template <class F>
Bracket bracket_minimum(F&& f, double lo, double hi, int max_expansions = 60) {
    constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt(5)) / 2
    Bracket br{};
    br.lo = lo;
    br.hi = hi;
    br.f_lo = f(lo);
    br.f_hi = f(hi);
    for (int round = 0; round <= max_expansions; ++round) {
        // Two interior probes at the golden sections.
        const double width = br.hi - br.lo;
        const double x1 = br.lo + kGolden * width;
        const double x2 = br.hi - kGolden * width;
        const double f1 = f(x1);
        const double f2 = f(x2);
        const double inner = (f1 <= f2) ? x1 : x2;
        const double f_inner = (f1 <= f2) ? f1 : f2;
        if (f_inner <= br.f_lo && f_inner <= br.f_hi) {
            br.inner = inner;
            br.f_inner = f_inner;
            br.ok = true;
            return br;
        }
        if (f1 > br.f_lo && f1 > br.f_hi && f2 > br.f_lo && f2 > br.f_hi) {
            br.bimodal = true;
            return br;
        }
        // Minimum lies at or beyond the lower endpoint; expand that side.
        if (br.f_lo < br.f_hi) {
            br.lo -= width;
            br.f_lo = f(br.lo);
        } else {
            br.hi += width;
            br.f_hi = f(br.hi);
        }
    }
    return br;
}

/// Brent's method: golden-section steps with parabolic interpolation when the
/// fit is trustworthy. Termination is on absolute bracket width < opt.tol;
/// `converged` is false if the iteration cap is reached first.
///
/// Requires a valid bracket (see bracket_minimum). Deterministic: identical
/// inputs give bit-identical results.
template <class F>
MinimizeResult minimize_bracketed(F&& f, const Bracket& bracket,
                                  const MinimizeOptions& opt = {}) {
    constexpr double kGolden = 0.3819660112501051;
    double a = bracket.lo;
    double b = bracket.hi;
    double x = bracket.inner;  // best point so far
    double w = x;              // second best
    double v = x;              // previous w
    double fx = bracket.f_inner;
    double fw = fx;
    double fv = fx;
    double delta = 0.0;   // most recent step
    double delta2 = 0.0;  // step before last

    MinimizeResult result;
    const double step_floor = opt.tol / 4.0;

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        if (b - a < opt.tol) {
            result.x = x;
            result.fx = fx;
            result.iterations = iter;
            result.converged = true;
            return result;
        }
        const double mid = 0.5 * (a + b);
        bool take_golden = true;
        if (std::fabs(delta2) > step_floor) {
            // Parabola through (x, w, v); accept its vertex only when it
            // falls inside (a, b) and moves less than half of delta2.
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::fabs(q);
            const double prev2 = delta2;
            delta2 = delta;
            if (std::fabs(p) < std::fabs(0.5 * q * prev2) && p > q * (a - x) && p < q * (b - x)) {
                delta = p / q;
                take_golden = false;
            }
        }
        if (take_golden) {
            delta2 = (x >= mid) ? a - x : b - x;
            delta = kGolden * delta2;
        }
        // Enforce a minimum move so the bracket keeps shrinking.
        double u;
        if (std::fabs(delta) >= step_floor) {
            u = x + delta;
        } else {
            u = x + (delta > 0.0 ? step_floor : -step_floor);
        }
        const double fu = f(u);
        if (fu <= fx) {
            if (u >= x) {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if (u < x) {
                a = u;
            } else {
                b = u;
            }
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    result.x = x;
    result.fx = fx;
    result.iterations = opt.max_iterations;
    result.converged = false;
    return result;
}

}  // namespace lncat
