#pragma once

#include <cmath>

namespace fracp {

/// |t|^p with fast paths for the common exponents.
inline double pow_abs(double t, double p) {
    const double a = std::fabs(t);
    if (p == 2.0) return a * a;
    if (p == 3.0) return a * a * a;
    if (p == 4.0) {
        const double s = a * a;
        return s * s;
    }
    if (p == 1.5) return a * std::sqrt(a);
    return std::pow(a, p);
}

/// |t|^(p-2) t, extended by 0 at t = 0 (the pointwise limit for p < 2).
inline double phi_p(double t, double p) {
    if (t == 0.0) return 0.0;
    if (p == 2.0) return t;
    if (p == 3.0) return std::fabs(t) * t;
    if (p == 4.0) return t * t * t;
    const double a = std::fabs(t);
    if (p == 1.5) return t / std::sqrt(a);
    return std::pow(a, p - 2.0) * t;
}

/// (p-1)|t|^(p-2), extended by 0 at t = 0; the derivative of phi_p.
inline double dphi_p(double t, double p) {
    if (t == 0.0) return 0.0;
    const double a = std::fabs(t);
    if (p == 2.0) return 1.0;
    if (p == 3.0) return 2.0 * a;
    if (p == 4.0) return 3.0 * a * a;
    return (p - 1.0) * std::pow(a, p - 2.0);
}

}  // namespace fracp
