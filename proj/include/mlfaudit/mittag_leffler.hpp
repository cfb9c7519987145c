#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "mlfaudit/special_core.hpp"

namespace mlfaudit {

/// Order alpha of E_alpha, validated to lie in (0, 2]. Values above 1 only
/// appear as the doubled order 2 alpha of the duplication route.
class AlphaParam {
 public:
  explicit AlphaParam(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Real and imaginary parts of E_alpha(i x^alpha), i.e. cos_alpha(x^alpha)
/// and sin_alpha(x^alpha), each with its own certified bound.
struct FracTrigPair {
  double cos_part = 0.0;
  double sin_part = 0.0;
  double cos_err = 0.0;
  double sin_err = 0.0;
  double err_bound = 0.0;  // max(cos_err, sin_err)
  bool converged = false;
};

/// Largest |z| accepted by eval_mlf and largest x accepted by frac_trig.
inline constexpr double kMaxArgument = 100.0;
inline constexpr double kMaxTrigAbscissa = 50.0;

/// Mittag-Leffler evaluator for one order alpha.
///
/// The constructor tabulates the coefficient ratios
/// Gamma(1 + (k-1) alpha) / Gamma(1 + k alpha) in 50-digit arithmetic, far
/// enough to certify any argument with |z| <= reach under `cfg`. The object
/// is immutable afterwards and can be shared between threads; sweeps should
/// build one evaluator and reuse it.
class MittagLeffler {
 public:
  MittagLeffler(AlphaParam alpha, double reach, EvalConfig cfg = {});

  double alpha() const { return alpha_; }
  double reach() const { return reach_; }
  const EvalConfig& config() const { return cfg_; }

  /// E_alpha(z) for |z| <= reach.
  SeriesEval operator()(ComplexValue z) const;

  /// E_alpha(lambda x^alpha) for x >= 0, with x^alpha formed in extended
  /// precision. `lambda_rel_err` declares how far the stored lambda may be
  /// from the intended one (relative).
  SeriesEval at_power(ComplexValue lambda, double x, double lambda_rel_err = 0.0) const;

  /// E_alpha(i x^alpha) split into the even (real) and odd (imaginary)
  /// sub-series, each a real alternating series in w = x^{2 alpha}.
  FracTrigPair trig(double x) const;

  /// Termwise derivative E_alpha'(z) = sum_{k>=1} k z^{k-1} / Gamma(1 + k alpha).
  SeriesEval derivative(ComplexValue z) const;

 private:
  SeriesRule full_rule() const;
  SeriesRule even_rule() const;
  SeriesRule odd_rule() const;
  SeriesRule derivative_rule() const;
  void check_reach(double modulus) const;

  double alpha_;
  double reach_;
  EvalConfig cfg_;
  // ratios_[k] = Gamma(1 + (k-1) alpha) / Gamma(1 + k alpha) for k >= 1.
  std::shared_ptr<const std::vector<DoubleDouble>> ratios_;
};

/// E_alpha(z) = sum_k z^k / Gamma(1 + k alpha). E_alpha(0) = 1 exactly.
/// Throws std::domain_error for |z| > kMaxArgument or non-finite z.
SeriesEval eval_mlf(AlphaParam alpha, ComplexValue z, const EvalConfig& cfg = {});

/// cos_alpha(x^alpha) and sin_alpha(x^alpha) for 0 < alpha <= 1, 0 <= x <= 50.
FracTrigPair frac_trig(AlphaParam alpha, double x, const EvalConfig& cfg = {});

/// E_{2 alpha}(-x^{2 alpha}), which equals cos_alpha(x^alpha) by the
/// duplication formula, evaluated through the doubled order's own series.
SeriesEval cos_via_duplication(AlphaParam alpha, double x, const EvalConfig& cfg = {});

/// |d/dx E_alpha(-x) from the termwise-differentiated series minus a central
/// difference with h = 1e-5|, for 0.1 <= x <= 5.
double mlf_derivative_check(AlphaParam alpha, double x);

}  // namespace mlfaudit
