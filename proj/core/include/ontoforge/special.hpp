#pragma once

namespace ontoforge {

// Digamma function for x > 0. Shifts arguments below 6 upward with
// psi(x) = psi(x + 1) - 1/x, then applies the asymptotic series.
// Absolute error below 1e-10 over the positive reals.
double digamma(double x);

}  // namespace ontoforge
