#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>

#include "mlfaudit/double_double.hpp"

namespace mlfaudit {

using ComplexValue = std::complex<double>;

/// Working precision of the series engine.
///
/// `Auto` runs in double with compensated summation and repeats the
/// evaluation in double-double when the certified bound misses `abs_tol`
/// or when |z| > 20, where plain double loses too many digits to the
/// alternating terms.
enum class Precision { Auto, Double, Extended };

struct EvalConfig {
  double abs_tol = 1e-14;
  std::size_t max_terms = 2000;
  Precision precision = Precision::Auto;

  /// Throws std::invalid_argument unless abs_tol > 0 and max_terms >= 1.
  void validate() const;
};

/// Value of a truncated power series together with a certified bound on
/// |value - exact|. When `converged` is false the value is not certified:
/// either the tail test never passed within the term budget or the bound
/// exceeds the requested tolerance.
struct SeriesEval {
  ComplexValue value{0.0, 0.0};
  double err_bound = std::numeric_limits<double>::infinity();
  std::size_t terms_used = 0;
  bool converged = false;
  bool extended = false;
};

/// Coefficient rule of an entire series sum_k c_k z^k, expressed through
/// the leading coefficient and the consecutive ratios c_k / c_{k-1}.
///
/// Working with ratios keeps every term inside the double exponent range even
/// when c_k itself under- or overflows (1/Gamma(1+k alpha) for large k).
struct SeriesRule {
  DoubleDouble leading{1.0};
  double leading_rel_err = 0.0;
  /// c_k / c_{k-1} for 1 <= k < available.
  std::function<DoubleDouble(std::size_t)> ratio;
  /// |ratio(k)| is nonincreasing for k >= monotone_from; the geometric tail
  /// bound is only applied from there on.
  std::size_t monotone_from = 1;
  /// Relative accuracy of each value returned by `ratio`.
  double ratio_rel_err = 0.0;
  std::size_t available = std::numeric_limits<std::size_t>::max();

  /// Builds a rule from explicit coefficients c_k (c_{k-1} must be nonzero
  /// whenever c_k is requested).
  static SeriesRule from_coefficients(std::function<DoubleDouble(std::size_t)> coefficient,
                                      std::size_t monotone_from = 1);
};

/// Sums sum_k c_k z^k. Truncation happens at the first K with
/// |t_{K+1} / t_K| <= 1/2 (and K >= monotone_from) whose geometric tail
/// bound |t_K| r / (1 - r) is negligible; err_bound adds that tail to a
/// first-order bound on every rounding error committed.
SeriesEval sum_entire_series(const SeriesRule& rule, ComplexValue z, const EvalConfig& cfg = {});

/// Same, for an argument known only to relative accuracy `arg_rel_err`
/// (|z_stored - z_exact| <= arg_rel_err |z_exact|); the perturbation is
/// propagated into err_bound.
SeriesEval sum_entire_series(const SeriesRule& rule, const DDComplex& z, double arg_rel_err,
                             const EvalConfig& cfg = {});

/// Gamma function for positive real arguments, relative error <= 1e-14 on
/// (0, 50]. Throws std::domain_error for x <= 0, non-finite x, or x beyond
/// the double range of Gamma (about 171.6).
double gamma_pos(double x);

/// Confluent hypergeometric function 1F1(a; b; x) = sum (a)_k x^k / ((b)_k k!).
/// Requires b > 0 and |x| <= 50 (std::domain_error otherwise).
SeriesEval kummer_phi(double a, double b, double x, const EvalConfig& cfg = {});

/// Dawson's integral D(x) = exp(-x^2) int_0^x exp(t^2) dt for x >= 0.
/// Absolute error below 1e-13 on [0, 10].
double dawson(double x);

/// x^p for x >= 0, p real, correctly rounded to double-double.
DoubleDouble extended_pow(double x, double p);

/// exp(i pi t) rounded componentwise to double-double.
DDComplex unit_phase(double t);

}  // namespace mlfaudit
