#pragma once

namespace joinmi {

/// Digamma function psi(x) for x > 0: upward recurrence to x >= 10, then the
/// asymptotic series. Absolute error below 1e-13 for x >= 1.
double digamma(double x);

}  // namespace joinmi
