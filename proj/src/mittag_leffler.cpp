#include "mlfaudit/mittag_leffler.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "extended.hpp"

namespace mlfaudit {

namespace {

constexpr double kUnitDD = DoubleDouble::kUnitRoundoff;

// Process-wide memo of Gamma(1+(k-1)a)/Gamma(1+ka), grown on demand.
class RatioCache {
 public:
  DoubleDouble get(double alpha, std::size_t k) {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<DoubleDouble>& table = tables_[alpha];
    if (table.empty()) table.emplace_back(0.0);
    const detail::Extended a(alpha);
    while (table.size() <= k) {
      const std::size_t j = table.size();
      const detail::Extended x = detail::Extended(1) + detail::Extended(static_cast<double>(j - 1)) * a;
      table.push_back(detail::to_double_double(boost::math::tgamma_delta_ratio(x, a)));
    }
    return table[k];
  }

 private:
  std::mutex mu_;
  std::map<double, std::vector<DoubleDouble>> tables_;
};

RatioCache& ratio_cache() {
  static RatioCache cache;
  return cache;
}

// Ratios tabulated until the series at |z| = reach has entered its geometric
// tail and dropped well below abs_tol. A few spare entries cover the
// even/odd and derivative rules, which look one or two indices further ahead.
std::vector<DoubleDouble> tabulate_ratios(double alpha, double reach, const EvalConfig& cfg) {
  const std::size_t cap = 2 * cfg.max_terms + 8;
  const double log_reach = reach > 0.0 ? std::log(reach) : -std::numeric_limits<double>::infinity();
  const double log_target = std::log(1e-3 * cfg.abs_tol) - 5.0;

  std::vector<DoubleDouble> ratios;
  ratios.reserve(64);
  ratios.emplace_back(0.0);
  double log_term = 0.0;
  std::size_t spare = 0;
  bool covered = false;
  for (std::size_t k = 1; k < cap; ++k) {
    const DoubleDouble rho = ratio_cache().get(alpha, k);
    ratios.push_back(rho);

    log_term += log_reach + std::log(rho.hi);
    if (!covered && k >= 2 && reach * rho.hi <= 0.5 &&
        log_term <= log_target - std::log(static_cast<double>(k + 1))) {
      covered = true;
    }
    if (covered && ++spare > 8) break;
  }
  return ratios;
}

}  // namespace

AlphaParam::AlphaParam(double value) : value_(value) {
  if (!std::isfinite(value) || !(value > 0.0) || value > 2.0) {
    throw std::domain_error("alpha must lie in (0, 2], got " + std::to_string(value));
  }
}

MittagLeffler::MittagLeffler(AlphaParam alpha, double reach, EvalConfig cfg)
    : alpha_(alpha.value()), reach_(reach), cfg_(cfg) {
  cfg_.validate();
  if (!std::isfinite(reach) || reach < 0.0) throw std::domain_error("MittagLeffler: reach must be finite and >= 0");
  ratios_ = std::make_shared<const std::vector<DoubleDouble>>(tabulate_ratios(alpha_, reach_, cfg_));
}

void MittagLeffler::check_reach(double modulus) const {
  if (!std::isfinite(modulus)) throw std::domain_error("MittagLeffler: non-finite argument");
  if (modulus > reach_ * (1.0 + 1e-12)) {
    throw std::domain_error("MittagLeffler: |z| = " + std::to_string(modulus) + " exceeds the prepared reach " +
                            std::to_string(reach_));
  }
}

SeriesRule MittagLeffler::full_rule() const {
  const auto* table = ratios_.get();
  SeriesRule rule;
  rule.leading = 1.0;
  rule.ratio = [table](std::size_t k) { return (*table)[k]; };
  rule.ratio_rel_err = kUnitDD;
  rule.available = table->size();
  return rule;
}

SeriesRule MittagLeffler::even_rule() const {
  // c_{2m} / c_{2m-2} = rho_{2m-1} rho_{2m}
  const auto* table = ratios_.get();
  SeriesRule rule;
  rule.leading = 1.0;
  rule.ratio = [table](std::size_t m) { return (*table)[2 * m - 1] * (*table)[2 * m]; };
  rule.ratio_rel_err = 3.0 * kUnitDD;
  rule.available = (table->size() + 1) / 2;
  return rule;
}

SeriesRule MittagLeffler::odd_rule() const {
  // c_{2m+1} / c_{2m-1} = rho_{2m} rho_{2m+1}, leading c_1 = rho_1
  const auto* table = ratios_.get();
  SeriesRule rule;
  rule.leading = (*table)[1];
  rule.leading_rel_err = kUnitDD;
  rule.ratio = [table](std::size_t m) { return (*table)[2 * m] * (*table)[2 * m + 1]; };
  rule.ratio_rel_err = 3.0 * kUnitDD;
  rule.available = table->size() / 2;
  return rule;
}

SeriesRule MittagLeffler::derivative_rule() const {
  // coefficients (k+1) c_{k+1}; ratio ((k+1)/k) rho_{k+1}
  const auto* table = ratios_.get();
  SeriesRule rule;
  rule.leading = (*table)[1];
  rule.leading_rel_err = kUnitDD;
  rule.ratio = [table](std::size_t k) {
    const double kk = static_cast<double>(k);
    return (*table)[k + 1] * (DoubleDouble(kk + 1.0) / DoubleDouble(kk));
  };
  rule.ratio_rel_err = 8.0 * kUnitDD;
  rule.available = table->size() - 1;
  return rule;
}

SeriesEval MittagLeffler::operator()(ComplexValue z) const {
  check_reach(std::abs(z));
  return sum_entire_series(full_rule(), z, cfg_);
}

SeriesEval MittagLeffler::at_power(ComplexValue lambda, double x, double lambda_rel_err) const {
  if (!std::isfinite(x) || x < 0.0) throw std::domain_error("MittagLeffler::at_power: x must be finite and >= 0");
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw std::domain_error("MittagLeffler::at_power: non-finite lambda");
  }
  const DoubleDouble power = extended_pow(x, alpha_);
  check_reach(std::abs(lambda) * power.hi);
  const DDComplex z{power * lambda.real(), power * lambda.imag()};
  return sum_entire_series(full_rule(), z, lambda_rel_err + 3.0 * kUnitDD, cfg_);
}

FracTrigPair MittagLeffler::trig(double x) const {
  if (!std::isfinite(x) || x < 0.0) throw std::domain_error("MittagLeffler::trig: x must be finite and >= 0");
  FracTrigPair out;
  if (x == 0.0) {
    out.cos_part = 1.0;
    out.converged = true;
    return out;
  }
  const DoubleDouble power = extended_pow(x, alpha_);
  check_reach(power.hi);
  const DoubleDouble w = power * power;
  const DDComplex arg{-w, DoubleDouble(0.0)};
  const double arg_err = 4.0 * kUnitDD;

  const SeriesEval even = sum_entire_series(even_rule(), arg, arg_err, cfg_);
  const SeriesEval odd = sum_entire_series(odd_rule(), arg, arg_err, cfg_);

  const double scale = static_cast<double>(power);
  out.cos_part = even.value.real();
  out.cos_err = even.err_bound;
  out.sin_part = odd.value.real() * scale;
  out.sin_err = odd.err_bound * scale * (1.0 + 1e-15) + 0x1p-52 * std::fabs(out.sin_part);
  out.err_bound = std::max(out.cos_err, out.sin_err);
  out.converged = even.converged && odd.converged;
  return out;
}

SeriesEval MittagLeffler::derivative(ComplexValue z) const {
  check_reach(std::abs(z));
  return sum_entire_series(derivative_rule(), z, cfg_);
}

SeriesEval eval_mlf(AlphaParam alpha, ComplexValue z, const EvalConfig& cfg) {
  const double modulus = std::abs(z);
  if (!std::isfinite(modulus)) throw std::domain_error("eval_mlf: non-finite argument");
  if (modulus > kMaxArgument) throw std::domain_error("eval_mlf: |z| exceeds " + std::to_string(kMaxArgument));
  return MittagLeffler(alpha, modulus, cfg)(z);
}

FracTrigPair frac_trig(AlphaParam alpha, double x, const EvalConfig& cfg) {
  if (alpha.value() > 1.0) throw std::domain_error("frac_trig: alpha must lie in (0, 1]");
  if (!std::isfinite(x) || x < 0.0 || x > kMaxTrigAbscissa) {
    throw std::domain_error("frac_trig: x must lie in [0, 50]");
  }
  return MittagLeffler(alpha, std::pow(x, alpha.value()) * (1.0 + 1e-15), cfg).trig(x);
}

SeriesEval cos_via_duplication(AlphaParam alpha, double x, const EvalConfig& cfg) {
  if (alpha.value() > 1.0) throw std::domain_error("cos_via_duplication: alpha must lie in (0, 1]");
  if (!std::isfinite(x) || x < 0.0) throw std::domain_error("cos_via_duplication: x must be finite and >= 0");
  const AlphaParam doubled(2.0 * alpha.value());
  const double w = std::pow(x, doubled.value());
  if (w > kMaxArgument) throw std::domain_error("cos_via_duplication: x^{2 alpha} exceeds " + std::to_string(kMaxArgument));
  return MittagLeffler(doubled, w * (1.0 + 1e-15), cfg).at_power({-1.0, 0.0}, x);
}

double mlf_derivative_check(AlphaParam alpha, double x) {
  if (!(x >= 0.1 && x <= 5.0)) throw std::domain_error("mlf_derivative_check: x must lie in [0.1, 5]");
  constexpr double h = 1e-5;
  const MittagLeffler ml(alpha, x + h);
  // d/dx E(-x) = -E'(-x)
  const double termwise = -ml.derivative({-x, 0.0}).value.real();
  const double forward = ml({-(x + h), 0.0}).value.real();
  const double backward = ml({-(x - h), 0.0}).value.real();
  const double central = (forward - backward) / (2.0 * h);
  return std::fabs(termwise - central);
}

}  // namespace mlfaudit
