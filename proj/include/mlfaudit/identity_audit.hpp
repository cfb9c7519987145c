#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mlfaudit/mittag_leffler.hpp"

namespace mlfaudit {

/// Sampled axis start, start + step, ..., stop (stop included when it is
/// a whole number of steps away, up to 1e-9 relative slack).
struct GridAxis {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  /// Throws std::invalid_argument unless step > 0 and start <= stop.
  std::size_t size() const;
  double at(std::size_t i) const { return start + static_cast<double>(i) * step; }
};

/// Residual of a purported identity sampled on one or two axes.
///
/// values[i * ny + j] holds |residual| at (x_i, y_j) (ny = 1 for a single
/// axis). Points whose evaluation error is not below the residual are
/// flagged uncertified and left out of sup_norm; raw_sup covers every point.
struct ResidualGrid {
  std::vector<GridAxis> axes;
  std::vector<double> values;
  std::vector<double> signed_values;  // real part of the signed difference
  std::vector<double> point_err;
  std::vector<bool> certified;
  double sup_norm = 0.0;
  double raw_sup = 0.0;
  double mean = 0.0;
  std::vector<double> argmax;  // coordinates of sup_norm (raw_sup if none certified)
  double uniform_err_bound = 0.0;  // inf if any evaluation did not converge
  double alpha = 0.0;

  /// Fills sup_norm, raw_sup, mean, argmax and certified from values/point_err.
  void finalize();
};

struct CauchyCoefficient {
  std::size_t n = 0;
  double alpha = 0.0;
  double value = 0.0;
};

/// A_n(a) = sum_{k=0}^n (-1)^{n-k} / (Gamma(1 + a k) Gamma(1 + a (n-k))),
/// the coefficient of (i x^a)^n in E_a(i x^a) E_a(-i x^a). 0 <= n <= 60,
/// 0 < a <= 1.
CauchyCoefficient cauchy_coefficient(std::size_t n, AlphaParam alpha);

/// |cos_a(x^a)^2 + sin_a(x^a)^2 - 1| on [0, x_max] for each alpha.
std::vector<ResidualGrid> product_residual_grid(const std::vector<double>& alphas, double x_max, double step,
                                                const EvalConfig& cfg = {});

/// E_a(l (x+y)^a) - E_a(l x^a) E_a(l y^a) on [0, xy_max]^2.
ResidualGrid semigroup_residual_grid(AlphaParam alpha, ComplexValue lambda, double xy_max, double step,
                                     const EvalConfig& cfg = {});

struct InverseResidual {
  double r1 = 0.0;  // |E_a(i x^a) E_a(-i x^a) - 1|
  double r2 = 0.0;  // |E_a(i (-x)^a) - E_a(-i x^a)|, principal branch
  double err1 = 0.0;
  double err2 = 0.0;
  bool certified = false;
};

/// 0 < a <= 1, x > 0. (-x)^a is taken as x^a e^{i a pi}.
InverseResidual inverse_relation_residual(AlphaParam alpha, double x, const EvalConfig& cfg = {});

/// Evaluation accuracy used by period_search unless overridden. Near M = 50
/// the largest series term is about e^50, which leaves roughly 1e-10 of
/// absolute accuracy in double-double.
inline EvalConfig period_eval_config() {
  EvalConfig cfg;
  cfg.abs_tol = 1e-9;
  return cfg;
}

struct PeriodSearchResult {
  double alpha = 0.0;
  double m_star = 0.0;
  double residual_star = 0.0;  // |E_a(i m_star^a) - 1|
  double err_star = 0.0;       // evaluation error at m_star
  double m_min = 0.0;          // requested window
  double m_max = 0.0;
  double effective_max = 0.0;  // < m_max when uncertified points cut the scan
  bool window_shrunk = false;
  std::size_t local_minima = 0;
  double uniform_err_bound = 0.0;  // over the certified scan
};

/// Global minimum of r(M) = |E_a(i M^a) - 1| over [m_min, m_max]: scan with
/// step 1e-3, then golden-section refinement around every local minimum.
/// 0 < m_min < m_max <= 50, 0 < a <= 1.
PeriodSearchResult period_search(AlphaParam alpha, double m_min, double m_max,
                                 const EvalConfig& cfg = period_eval_config());

/// Same residual for the translated form E_a(i x^a) = E_a(i (x + M)^a),
/// taken as sup over x in [0, x_max] (step) at a fixed M.
double translated_period_residual(AlphaParam alpha, double M, double x_max, double step,
                                  const EvalConfig& cfg = period_eval_config());

struct MonotonicityResult {
  double alpha = 0.0;
  double max_difference = 0.0;  // max_i v_{i+1} - v_i
  double argmax_x = 0.0;
  double uniform_err_bound = 0.0;
  bool nonincreasing = false;  // every difference <= 1e-12
};

/// First differences of E_{2a}(-x^{2a}) on [0, x_max], 0 < a <= 1/2,
/// x_max <= 5.
MonotonicityResult monotonicity_audit(AlphaParam alpha, double x_max, double step, const EvalConfig& cfg = {});

}  // namespace mlfaudit
