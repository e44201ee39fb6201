#pragma once

// Closed-form I/O lower bounds evaluated at concrete (n, M, B). Each
// formula clamps at the trivial n reads of the input before dividing by the
// line size.

#include <algorithm>
#include <cmath>

namespace dpio {

// No-recomputation bound: ((n^3 - n) / (16 sqrt(M)) - n(n+1)/2 - 3M) / B,
// at least n/B.
inline double lower_bound_nr(double n, double m, double b) {
    double v = (n * n * n - n) / (16.0 * std::sqrt(m)) - n * (n + 1) / 2.0 - 3.0 * m;
    return std::max(v, n) / b;
}

// General (recomputation allowed) bound: ((n-6M-1)^3 / (18 sqrt(M)) - 2M) / B,
// at least n/B.
inline double lower_bound_rc(double n, double m, double b) {
    double d = n - 6.0 * m - 1.0;
    double v = d * d * d / (18.0 * std::sqrt(m)) - 2.0 * m;
    return std::max(v, n) / b;
}

// CYK bound: the general bound scaled by the number of distinct binary
// right-hand sides.
inline double cyk_lower_bound(double n, double m, double b, double gamma) {
    double d = n - 6.0 * m - 1.0;
    double v = d * d * d / (18.0 * std::sqrt(m)) * gamma - 2.0 * m * gamma;
    return std::max(v, n) / b;
}

}  // namespace dpio
