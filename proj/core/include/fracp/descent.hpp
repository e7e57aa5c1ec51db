#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace fracp {

struct DescentConfig {
    int max_iterations = 5000;
    double tolerance = 1e-9;  // sup-norm of the gradient
    double armijo_c = 1e-4;
    double backtrack = 0.5;
};

struct DescentResult {
    int iterations = 0;
    bool converged = false;
    double sup_grad = std::numeric_limits<double>::infinity();
};

/// Monotone gradient descent with Barzilai-Borwein trial steps and Armijo
/// backtracking.  `value(x)` may return +inf to veto a trial point;
/// `grad(x, g)` fills the gradient; `post(x)` is applied to accepted iterates
/// (renormalization, symmetry projection, ...).
template <class Value, class Gradient, class Post>
DescentResult bb_armijo_minimize(std::vector<double>& x, Value&& value, Gradient&& grad,
                                 const DescentConfig& cfg, Post&& post) {
    const std::size_t n = x.size();
    std::vector<double> g(n), x_prev, g_prev, trial(n);
    double f = value(x);
    double alpha = 1.0;

    for (int it = 0; it < cfg.max_iterations; ++it) {
        grad(x, g);
        double gsup = 0.0, g2 = 0.0;
        for (double gi : g) {
            gsup = std::max(gsup, std::fabs(gi));
            g2 += gi * gi;
        }
        if (gsup <= cfg.tolerance) return {it, true, gsup};

        if (!x_prev.empty()) {
            double ss = 0.0, sy = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double si = x[i] - x_prev[i];
                sy += si * (g[i] - g_prev[i]);
                ss += si * si;
            }
            if (sy > 1e-300) alpha = std::clamp(ss / sy, 1e-12, 1e12);
        }
        x_prev = x;
        g_prev = g;

        double t = alpha;
        bool accepted = false;
        double f_trial = f;
        for (int bt = 0; bt < 80; ++bt) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] - t * g[i];
            f_trial = value(trial);
            const double decrease = cfg.armijo_c * t * g2;
            if (f_trial <= f - decrease) {
                accepted = true;
                break;
            }
            // Below the rounding floor of the objective the Armijo test can
            // no longer certify progress; accept the safeguarded step so the
            // gradient keeps contracting.
            const double flat = 8.0 * std::numeric_limits<double>::epsilon() *
                                (std::fabs(f) + std::fabs(f_trial));
            if (decrease <= flat && f_trial <= f + flat) {
                accepted = true;
                break;
            }
            t *= cfg.backtrack;
        }
        if (!accepted) return {it, false, gsup};  // flat to machine precision

        x = trial;
        post(x);
        f = value(x);
    }

    grad(x, g);
    double gsup = 0.0;
    for (double gi : g) gsup = std::max(gsup, std::fabs(gi));
    return {cfg.max_iterations, gsup <= cfg.tolerance, gsup};
}

template <class Value, class Gradient>
DescentResult bb_armijo_minimize(std::vector<double>& x, Value&& value, Gradient&& grad,
                                 const DescentConfig& cfg) {
    return bb_armijo_minimize(x, value, grad, cfg, [](std::vector<double>&) {});
}

}  // namespace fracp
