#pragma once

#include <functional>

namespace pinch {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15-point) integration of f over
/// [a, b]. The interval with the largest error estimate is bisected until
/// the total estimate is below max(abs_tol, rel_tol * |value|).
/// Throws std::runtime_error if the interval budget runs out first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12, double rel_tol = 1e-9,
                           int max_intervals = 2000);

}  // namespace pinch
