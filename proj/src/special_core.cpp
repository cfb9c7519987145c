#include "mlfaudit/special_core.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <quadmath.h>

#include <boost/math/constants/constants.hpp>

#include "extended.hpp"
#include "mlfaudit/compensated_sum.hpp"

namespace mlfaudit {

namespace {

constexpr double kDoubleUnit = 0x1p-53;

// Scalar traits for the two working precisions.
template <class R>
struct Working;

template <>
struct Working<double> {
  static constexpr double unit = kDoubleUnit;
  // Rounding a double-double ratio or argument to double costs one unit.
  static constexpr double conversion = kDoubleUnit;
  static double from(const DoubleDouble& x) { return x.hi + x.lo; }
  static double magnitude(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static bool finite(double x) { return std::isfinite(x); }
};

template <>
struct Working<DoubleDouble> {
  static constexpr double unit = DoubleDouble::kUnitRoundoff;
  static constexpr double conversion = 0.0;
  static DoubleDouble from(const DoubleDouble& x) { return x; }
  static double magnitude(const DoubleDouble& x) { return std::fabs(x.hi); }
  static double to_double(const DoubleDouble& x) { return static_cast<double>(x); }
  static bool finite(const DoubleDouble& x) { return isfinite(x); }
};

// Running sum of one component. The double path compensates every addition;
// the double-double path accumulates plainly and bounds its error by
// u * sum_k |S_k| over the partial sums.
template <class R>
class ComponentSum;

template <>
class ComponentSum<double> {
 public:
  void add(double t) {
    sum_ += t;
    abs_terms_ += std::fabs(t);
    ++count_;
  }
  double value() const { return sum_.value(); }
  double error_bound() const {
    const double n = static_cast<double>(count_);
    return 2.0 * kDoubleUnit * std::fabs(value()) + 4.0 * n * kDoubleUnit * kDoubleUnit * abs_terms_;
  }

 private:
  CompensatedSum sum_;
  double abs_terms_ = 0.0;
  std::size_t count_ = 0;
};

template <>
class ComponentSum<DoubleDouble> {
 public:
  void add(const DoubleDouble& t) {
    sum_ += t;
    abs_partials_ += std::fabs(sum_.hi);
  }
  DoubleDouble value() const { return sum_; }
  double error_bound() const { return 1.01 * DoubleDouble::kUnitRoundoff * abs_partials_; }

 private:
  DoubleDouble sum_{0.0};
  double abs_partials_ = 0.0;
};

template <class R>
SeriesEval run_series(const SeriesRule& rule, const DDComplex& z, double arg_rel_err, const EvalConfig& cfg) {
  using W = Working<R>;
  SeriesEval out;
  out.extended = std::is_same_v<R, DoubleDouble>;

  const bool real_arg = z.im.hi == 0.0 && z.im.lo == 0.0;
  const R zr = W::from(z.re);
  const R zi = W::from(z.im);
  const double zabs = std::hypot(z.re.hi, z.im.hi) * (1.0 + 4.0 * kDoubleUnit) * (1.0 + arg_rel_err);

  R tr = W::from(rule.leading);
  R ti = R(0.0);
  double rel = W::conversion + rule.leading_rel_err;  // relative error bound of the current term

  ComponentSum<R> sr;
  ComponentSum<R> si;
  sr.add(tr);
  double rounding = rel * W::magnitude(tr);

  if (zabs == 0.0) {
    const double v = W::to_double(sr.value());
    out.value = {v, 0.0};
    out.terms_used = 1;
    const double compute_err = rounding;
    out.err_bound = compute_err + kDoubleUnit * std::fabs(v);
    out.converged = compute_err <= cfg.abs_tol;
    return out;
  }

  const double step = (real_arg ? 3.0 : 6.0) * W::unit + W::conversion + rule.ratio_rel_err + arg_rel_err;
  const double ratio_slack = (1.0 + rule.ratio_rel_err) * (1.0 + 4.0 * kDoubleUnit);
  const std::size_t limit = std::min(cfg.max_terms, rule.available);

  bool tail_ok = false;
  double tail = std::numeric_limits<double>::infinity();
  std::size_t k = 1;
  DoubleDouble next_ratio = limit >= 2 ? rule.ratio(1) : DoubleDouble(0.0);
  for (; k < limit; ++k) {
    const R rho = W::from(next_ratio);
    if (real_arg) {
      tr = tr * zr * rho;
    } else {
      const R nr = tr * zr - ti * zi;
      const R ni = tr * zi + ti * zr;
      tr = nr * rho;
      ti = ni * rho;
    }
    rel = (1.0 + rel) * (1.0 + step) - 1.0;
    if (!W::finite(tr) || !W::finite(ti)) return out;

    sr.add(tr);
    if (!real_arg) si.add(ti);
    const double mag = real_arg ? W::magnitude(tr) : std::hypot(W::magnitude(tr), W::magnitude(ti));
    const double true_mag = mag / (1.0 - rel);
    rounding += rel * true_mag;

    if (k + 1 >= rule.available) break;
    next_ratio = rule.ratio(k + 1);
    if (k + 1 >= rule.monotone_from) {
      const double r = zabs * std::fabs(next_ratio.hi) * ratio_slack;
      if (r <= 0.5) {
        tail = true_mag * r / (1.0 - r);
        const double partial = std::hypot(W::magnitude(sr.value()), W::magnitude(si.value()));
        const double target = std::max(1e-3 * cfg.abs_tol, 1e-2 * W::unit * partial);
        if (tail <= target) {
          tail_ok = true;
          ++k;
          break;
        }
      }
    }
  }

  const double vr = W::to_double(sr.value());
  const double vi = W::to_double(si.value());
  out.value = {vr, vi};
  out.terms_used = k;
  if (!tail_ok) return out;

  const double compute_err = tail + rounding + sr.error_bound() + si.error_bound();
  out.err_bound = compute_err + kDoubleUnit * (std::fabs(vr) + std::fabs(vi));
  out.converged = compute_err <= cfg.abs_tol;
  return out;
}

}  // namespace

void EvalConfig::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw std::invalid_argument("EvalConfig: abs_tol must be a positive finite number");
  }
  if (max_terms < 1) throw std::invalid_argument("EvalConfig: max_terms must be at least 1");
}

SeriesRule SeriesRule::from_coefficients(std::function<DoubleDouble(std::size_t)> coefficient,
                                         std::size_t monotone_from) {
  SeriesRule rule;
  rule.leading = coefficient(0);
  rule.ratio = [coefficient = std::move(coefficient)](std::size_t k) { return coefficient(k) / coefficient(k - 1); };
  rule.monotone_from = monotone_from;
  rule.ratio_rel_err = 4.0 * DoubleDouble::kUnitRoundoff;
  return rule;
}

SeriesEval sum_entire_series(const SeriesRule& rule, const DDComplex& z, double arg_rel_err, const EvalConfig& cfg) {
  cfg.validate();
  if (!isfinite(z.re) || !isfinite(z.im)) throw std::domain_error("sum_entire_series: non-finite argument");
  switch (cfg.precision) {
    case Precision::Double:
      return run_series<double>(rule, z, arg_rel_err, cfg);
    case Precision::Extended:
      return run_series<DoubleDouble>(rule, z, arg_rel_err, cfg);
    case Precision::Auto:
      break;
  }
  if (std::hypot(z.re.hi, z.im.hi) <= 20.0) {
    SeriesEval quick = run_series<double>(rule, z, arg_rel_err, cfg);
    if (quick.converged) return quick;
  }
  return run_series<DoubleDouble>(rule, z, arg_rel_err, cfg);
}

SeriesEval sum_entire_series(const SeriesRule& rule, ComplexValue z, const EvalConfig& cfg) {
  return sum_entire_series(rule, DDComplex{z.real(), z.imag()}, 0.0, cfg);
}

// Lanczos approximation (g = 607/128, 15 terms, Godfrey's coefficients) on
// [1, 2], extended to (0, 171.6) by the recurrence Gamma(x+1) = x Gamma(x).
double gamma_pos(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error("gamma_pos: argument must be positive and finite, got " + std::to_string(x));
  }
  if (x > 171.6) throw std::domain_error("gamma_pos: argument overflows double");

  static constexpr std::array<double, 15> kCoeff = {
      0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
      14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
      .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
      -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
      .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};
  constexpr double g = 607.0 / 128.0;

  // Reduce to y in [1, 2): Gamma(x) = prod * Gamma(y) or Gamma(y) / x.
  double scale = 1.0;
  double y = x;
  if (y < 1.0) {
    scale = 1.0 / y;
    y += 1.0;
  }
  while (y >= 2.0) {
    y -= 1.0;
    scale *= y;
  }

  const double z = y - 1.0;
  double series = kCoeff[0];
  for (std::size_t i = 1; i < kCoeff.size(); ++i) series += kCoeff[i] / (z + static_cast<double>(i));
  const double t = z + g + 0.5;
  const double core = std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * series;
  return scale * core;
}

SeriesEval kummer_phi(double a, double b, double x, const EvalConfig& cfg) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(x)) {
    throw std::domain_error("kummer_phi: non-finite parameter");
  }
  if (!(b > 0.0)) throw std::domain_error("kummer_phi: b must be positive");
  if (std::fabs(x) > 50.0) throw std::domain_error("kummer_phi: |x| must not exceed 50");

  SeriesRule rule;
  rule.leading = 1.0;
  rule.ratio = [a, b](std::size_t k) {
    const double km1 = static_cast<double>(k - 1);
    return (DoubleDouble(a) + km1) / ((DoubleDouble(b) + km1) * static_cast<double>(k));
  };
  // (a+k-1)/((b+k-1)k) is monotone once k dominates |a| and |b|.
  rule.monotone_from = static_cast<std::size_t>(std::ceil(4.0 * (std::fabs(a) + std::fabs(b)) + 4.0));
  rule.ratio_rel_err = 8.0 * DoubleDouble::kUnitRoundoff;
  return sum_entire_series(rule, ComplexValue{x, 0.0}, cfg);
}

double dawson(double x) {
  if (!std::isfinite(x) || x < 0.0) throw std::domain_error("dawson: argument must be finite and >= 0");
  if (x == 0.0) return 0.0;

  if (x <= 10.0) {
    // D(x) = x e^{-w} sum_k w^k / ((2k+1) k!), w = x^2. All terms are
    // positive; the same rounded w feeds both factors so its rounding error
    // largely cancels.
    const double w = x * x;
    CompensatedSum sum;
    double pw = 1.0;  // w^k / k!
    for (int k = 0; k < 2000; ++k) {
      if (k > 0) pw *= w / k;
      const double term = pw / (2.0 * k + 1.0);
      sum += term;
      if (k > w && term < 1e-18 * sum.value()) break;
    }
    return x * std::exp(-w) * sum.value();
  }

  // Asymptotic expansion D(x) ~ 1/(2x) sum_k (2k-1)!! / (2x^2)^k; for x > 10
  // the smallest term is far below double resolution.
  const double inv = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1.0) * inv;
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum / (2.0 * x);
}

DoubleDouble extended_pow(double x, double p) {
  if (!(x >= 0.0) || !std::isfinite(x) || !std::isfinite(p)) {
    throw std::domain_error("extended_pow: base must be finite and >= 0");
  }
  if (x == 0.0) {
    if (p == 0.0) return 1.0;
    if (p > 0.0) return 0.0;
    throw std::domain_error("extended_pow: zero base with negative exponent");
  }
  if (x == 1.0 || p == 0.0) return 1.0;
  if (p == 1.0) return x;
  // binary128 pow is accurate to about 1e-34, below double-double resolution.
  const __float128 q = powq(static_cast<__float128>(x), static_cast<__float128>(p));
  const double hi = static_cast<double>(q);
  const double lo = static_cast<double>(q - static_cast<__float128>(hi));
  return detail::quick_two_sum(hi, lo);
}

DDComplex unit_phase(double t) {
  using detail::Extended;
  const Extended angle = boost::math::constants::pi<Extended>() * Extended(t);
  return {detail::to_double_double(boost::multiprecision::cos(angle)),
          detail::to_double_double(boost::multiprecision::sin(angle))};
}

}  // namespace mlfaudit
