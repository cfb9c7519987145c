#pragma once

#include <array>
#include <string>
#include <vector>

#include "mlfaudit/mittag_leffler.hpp"
#include "mlfaudit/quadrature.hpp"

namespace mlfaudit {

/// One reading of the two-term decomposition
///   E_{2a}(-x^{2a}) = f(x) + g(x),   1/2 < a < 1,
/// with
///   f = (1/pi) int_0^inf e^{-s A} s^kappa sin(2 a pi) / (s^{4a} + 2 s^{2a} cos(2 a pi) + 1) ds
///   g = P exp(sigma A cos(theta)) cos(A sin(theta)).
struct GVariantSpec {
  enum class AngleParse { PI_OVER_2ALPHA, PI_ALPHA_OVER_2 };        // theta
  enum class ExpSign { AS_PRINTED_NEGATIVE, STANDARD_POSITIVE };    // sigma = -1 / +1
  enum class ArgPower { X_TO_2ALPHA, X };                           // A
  enum class Prefactor { TWO_OVER_ALPHA, ONE_OVER_ALPHA };          // P
  enum class KernelPower { S_TO_2ALPHA, S_TO_2ALPHA_MINUS_1 };      // kappa

  AngleParse angle_parse = AngleParse::PI_OVER_2ALPHA;
  ExpSign exp_sign = ExpSign::AS_PRINTED_NEGATIVE;
  ArgPower arg_power = ArgPower::X_TO_2ALPHA;
  Prefactor prefactor = Prefactor::TWO_OVER_ALPHA;
  KernelPower kernel_power = KernelPower::S_TO_2ALPHA;

  bool operator==(const GVariantSpec&) const = default;

  /// The tuple exactly as displayed.
  static GVariantSpec paper_literal() { return {}; }
  /// All 32 combinations in a fixed order, literal first.
  static std::vector<GVariantSpec> all();

  /// e.g. "pi/(2a),neg,x^2a,2/a,s^2a"
  std::string to_string() const;
};

struct FComponent {
  double value = 0.0;    // NaN when the quadrature failed
  double quad_err = 0.0;
  bool converged = false;
};

/// f at x >= 0 for the dialect's exponential argument and kernel power.
/// x = 0 uses the closed-form limit. Requires 1/2 < alpha < 1.
FComponent f_component(AlphaParam alpha, double x, const QuadratureConfig& q, GVariantSpec::ArgPower arg_power,
                       GVariantSpec::KernelPower kernel_power = GVariantSpec::KernelPower::S_TO_2ALPHA_MINUS_1);

/// g at x >= 0 for the given dialect. Requires 1/2 < alpha < 1.
double g_component(AlphaParam alpha, double x, const GVariantSpec& variant);

struct VariantResidual {
  GVariantSpec variant;
  double sup_residual = 0.0;  // sup_x |f + g - E_{2a}(-x^{2a})|
  double argmax_x = 0.0;
};

struct DecompositionRecord {
  double alpha = 0.0;
  double x = 0.0;
  double f_value = 0.0;     // under best_variant
  double f_err = 0.0;
  std::vector<double> g_values;  // one per GVariantSpec::all() entry
  double series_value = 0.0;
  double series_err = 0.0;
  GVariantSpec best_variant;
  double best_residual = 0.0;     // |f + g - series| at this x, best variant
  double literal_residual = 0.0;  // same for paper_literal()
};

struct Reconciliation {
  double alpha = 0.0;
  std::vector<DecompositionRecord> records;
  std::vector<VariantResidual> variants;  // same order as GVariantSpec::all()
  GVariantSpec best_variant;
  double best_sup = 0.0;
  double literal_sup = 0.0;
  double max_quad_err = 0.0;
  double max_series_err = 0.0;  // inf when a series value did not converge
};

/// Compares every dialect with the series on `x_grid` (inside [0.1, 3]).
/// Throws std::runtime_error when no dialect reaches 1e-4 or a quadrature
/// fails to meet `q`.
Reconciliation reconcile_decomposition(AlphaParam alpha, const std::vector<double>& x_grid,
                                       const QuadratureConfig& q = {}, const EvalConfig& cfg = {});

/// 0.25, 0.30, ..., 3.0
std::vector<double> default_decomposition_grid();

}  // namespace mlfaudit
