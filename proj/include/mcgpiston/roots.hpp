#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "mcgpiston/errors.hpp"

namespace mcg {

struct RootOptions {
    double rel_tol = 4.0 * std::numeric_limits<double>::epsilon();
    double abs_tol = 0.0;
    int max_iter = 200;
};

struct RootResult {
    double x;
    double fx;
    int iterations;
};

/// Safeguarded Newton iteration on a bracketed root. The bracket must change
/// sign; Newton steps that leave the bracket fall back to bisection, so the
/// result is deterministic and always converges for monotone f.
inline RootResult find_root(const std::function<double(double)>& f,
                            const std::function<double(double)>& df,
                            double lo, double hi, RootOptions opts = {}) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) return {lo, 0.0, 0};
    if (f_hi == 0.0) return {hi, 0.0, 0};
    if (std::isnan(f_lo) || std::isnan(f_hi) || (f_lo < 0.0) == (f_hi < 0.0)) {
        throw convergence_error("find_root: bracket does not change sign", lo, hi, f_lo, f_hi);
    }

    double x = 0.5 * (lo + hi);
    double fx = f(x);
    for (int it = 1; it <= opts.max_iter; ++it) {
        if (fx == 0.0) return {x, fx, it};
        if ((fx < 0.0) == (f_lo < 0.0)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        double width = hi - lo;
        if (width <= opts.rel_tol * std::abs(x) + opts.abs_tol) return {x, fx, it};

        double x_next = std::numeric_limits<double>::quiet_NaN();
        if (df) {
            double d = df(x);
            if (d != 0.0 && std::isfinite(d)) {
                double candidate = x - fx / d;
                if (candidate > lo && candidate < hi) x_next = candidate;
            }
        }
        if (!std::isfinite(x_next)) x_next = 0.5 * (lo + hi);
        if (x_next == x) return {x, fx, it}; // stuck at rounding resolution
        x = x_next;
        fx = f(x);
    }
    throw convergence_error("find_root: iteration cap exceeded", lo, hi, f_lo, f_hi);
}

inline RootResult find_root(const std::function<double(double)>& f,
                            double lo, double hi, RootOptions opts = {}) {
    return find_root(f, nullptr, lo, hi, opts);
}

/// Doubles `hi` leftward or rightward from `start` until pred(hi) holds.
inline double expand_until(const std::function<bool(double)>& pred, double start, double factor,
                           int max_steps = 2048) {
    double x = start;
    for (int i = 0; i < max_steps; ++i) {
        if (pred(x)) return x;
        x *= factor;
    }
    throw convergence_error("expand_until: no sign change found", start, x, 0.0, 0.0);
}

} // namespace mcg
