#pragma once

#include <cstddef>
#include <functional>

namespace mlfaudit {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  std::size_t max_subdivisions = 2000;

  /// Throws std::invalid_argument unless both tolerances are positive and
  /// max_subdivisions >= 1.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // sum of per-interval Kronrod-Gauss differences
  std::size_t subdivisions = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on a finite [a, b]: the
/// interval with the largest error estimate is bisected until the total
/// estimate is <= max(abs_tol, rel_tol |I|) or the budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureConfig& cfg = {});

}  // namespace mlfaudit
