#pragma once

// Test-only numerical oracles, kept independent of the library code they
// check.

#include <cmath>

namespace oracles {

/// Composite Simpson quadrature of f over [a, b] with n (even) intervals.
template <typename F>
double simpson(F&& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + h * i) * ((i % 2 != 0) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace oracles
