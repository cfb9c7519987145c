#include "mlfaudit/frac_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mlfaudit/compensated_sum.hpp"

namespace mlfaudit {

namespace {

constexpr double kGammaRelErr = 1e-14;
constexpr double kUnit = 0x1p-53;

void require_unit_interval(AlphaParam alpha, const char* who) {
  if (alpha.value() > 1.0) throw std::domain_error(std::string(who) + ": alpha must lie in (0, 1]");
}

void require_positive_x(double x, const char* who) {
  if (!std::isfinite(x) || !(x > 0.0)) throw std::domain_error(std::string(who) + ": x must be positive and finite");
}

MonomialTerm multiply(MonomialTerm a, MonomialTerm b) { return {a.coeff * b.coeff, a.exponent + b.exponent}; }

double evaluate_term(MonomialTerm t, double x) { return t.coeff * std::pow(x, t.exponent); }

}  // namespace

MonomialSum::MonomialSum(std::vector<MonomialTerm> terms) {
  for (const MonomialTerm& t : terms) add(t);
}

void MonomialSum::add(MonomialTerm term) {
  if (!std::isfinite(term.coeff) || !std::isfinite(term.exponent)) {
    throw std::domain_error("MonomialSum: non-finite term");
  }
  if (!(term.exponent > -1.0)) throw std::domain_error("MonomialSum: exponent must exceed -1");
  if (term.coeff == 0.0) return;

  auto it = std::lower_bound(terms_.begin(), terms_.end(), term.exponent - kExponentMergeTol,
                             [](const MonomialTerm& t, double e) { return t.exponent < e; });
  if (it != terms_.end() && std::fabs(it->exponent - term.exponent) <= kExponentMergeTol) {
    it->coeff += term.coeff;
    if (it->coeff == 0.0) terms_.erase(it);
    return;
  }
  terms_.insert(it, term);
}

double MonomialSum::evaluate(double x) const {
  if (!std::isfinite(x) || x < 0.0) throw std::domain_error("MonomialSum::evaluate: x must be finite and >= 0");
  CompensatedSum sum;
  for (const MonomialTerm& t : terms_) {
    if (x == 0.0 && t.exponent < 0.0) throw std::domain_error("MonomialSum::evaluate: negative power at 0");
    sum += evaluate_term(t, x);
  }
  return sum.value();
}

double MonomialSum::evaluate_abs(double x) const {
  double total = 0.0;
  for (const MonomialTerm& t : terms_) total += std::fabs(evaluate_term(t, x));
  return total;
}

MonomialTerm frac_deriv_monomial(double p, AlphaParam alpha) {
  require_unit_interval(alpha, "frac_deriv_monomial");
  if (!std::isfinite(p) || !(p > -1.0)) throw std::domain_error("frac_deriv_monomial: p must exceed -1");
  const double a = alpha.value();
  if (!(1.0 + p - a > 0.0)) {
    throw std::domain_error("frac_deriv_monomial: 1 + p - alpha must be positive (Gamma pole)");
  }
  return {gamma_pos(1.0 + p) / gamma_pos(1.0 + p - a), p - a};
}

MonomialSum frac_deriv_sum(const MonomialSum& f, AlphaParam alpha) {
  MonomialSum out;
  for (const MonomialTerm& t : f.terms()) {
    if (std::fabs(t.exponent) <= MonomialSum::kExponentMergeTol) continue;  // D^alpha const = 0
    const MonomialTerm d = frac_deriv_monomial(t.exponent, alpha);
    out.add({t.coeff * d.coeff, d.exponent});
  }
  return out;
}

RuleResidual leibniz_residual(AlphaParam alpha, double x) {
  require_unit_interval(alpha, "leibniz_residual");
  require_positive_x(x, "leibniz_residual");
  const MonomialTerm root{1.0, 0.5};
  // D(f g) with f g = x
  const MonomialTerm lhs = frac_deriv_monomial(1.0, alpha);
  // g Df + f Dg = 2 x^{1/2} D x^{1/2}
  const MonomialTerm half = multiply(root, frac_deriv_monomial(0.5, alpha));
  const MonomialTerm rhs{2.0 * half.coeff, half.exponent};

  RuleResidual r{evaluate_term(lhs, x), evaluate_term(rhs, x), 0.0, alpha.value(), x};
  r.residual = r.lhs - r.rhs;
  return r;
}

RuleResidual chain1_residual(AlphaParam alpha, double x) {
  require_unit_interval(alpha, "chain1_residual");
  require_positive_x(x, "chain1_residual");
  // (f o u)(x) = (x^{1/2})^2 = x
  const MonomialTerm lhs = frac_deriv_monomial(1.0, alpha);
  // f'(u) = 2u evaluated at u = x^{1/2}, times D x^{1/2}
  const MonomialTerm outer{2.0, 0.5};
  const MonomialTerm rhs = multiply(outer, frac_deriv_monomial(0.5, alpha));

  RuleResidual r{evaluate_term(lhs, x), evaluate_term(rhs, x), 0.0, alpha.value(), x};
  r.residual = r.lhs - r.rhs;
  return r;
}

RuleResidual chain2_residual(AlphaParam alpha, double x) {
  require_unit_interval(alpha, "chain2_residual");
  require_positive_x(x, "chain2_residual");
  const double a = alpha.value();
  // (f o u)(x) = (x^2)^{1/2} = x
  const MonomialTerm lhs = frac_deriv_monomial(1.0, alpha);
  // D_u u^{1/2} = c u^{1/2 - alpha}; at u = x^2 this is c x^{1 - 2 alpha}
  const MonomialTerm inner = frac_deriv_monomial(0.5, alpha);
  const MonomialTerm substituted{inner.coeff, 2.0 * inner.exponent};
  // (du/dx)^alpha = (2x)^alpha
  const MonomialTerm slope{std::pow(2.0, a), a};
  const MonomialTerm rhs = multiply(substituted, slope);

  RuleResidual r{evaluate_term(lhs, x), evaluate_term(rhs, x), 0.0, a, x};
  r.residual = r.lhs - r.rhs;
  return r;
}

EigenResidual eigen_relation_residual(AlphaParam alpha, ComplexValue lambda, double x, std::size_t K,
                                      const EvalConfig& cfg) {
  require_unit_interval(alpha, "eigen_relation_residual");
  if (!std::isfinite(x) || !(x > 0.0) || x > 3.0) throw std::domain_error("eigen_relation_residual: x must lie in (0, 3]");
  if (K < 1 || K > 200) throw std::domain_error("eigen_relation_residual: K must lie in [1, 200]");
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw std::domain_error("eigen_relation_residual: non-finite lambda");
  }
  const double a = alpha.value();

  // S_K = sum_{k<K} lambda^k x^{k alpha} / Gamma(1 + k alpha), split into real
  // and imaginary coefficient sums. Terms whose Gamma overflows double have
  // coefficients below the smallest double and end the truncation early.
  MonomialSum re_part;
  MonomialSum im_part;
  ComplexValue power{1.0, 0.0};
  std::size_t terms = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const double arg = 1.0 + static_cast<double>(k) * a;
    if (arg > 171.0) break;
    const double inv_gamma = 1.0 / gamma_pos(arg);
    const double e = static_cast<double>(k) * a;
    re_part.add({power.real() * inv_gamma, e});
    im_part.add({power.imag() * inv_gamma, e});
    power *= lambda;
    ++terms;
  }

  const MonomialSum d_re = frac_deriv_sum(re_part, alpha);
  const MonomialSum d_im = frac_deriv_sum(im_part, alpha);
  const ComplexValue termwise{d_re.evaluate(x), d_im.evaluate(x)};

  const double lambda_abs = std::abs(lambda);
  const double z_abs = lambda_abs * std::pow(x, a);
  const MittagLeffler ml(alpha, z_abs * (1.0 + 1e-12), cfg);
  const SeriesEval e = ml.at_power(lambda, x);
  const ComplexValue target = lambda * e.value;

  EigenResidual out;
  out.terms = terms;
  out.residual = std::abs(termwise - target);

  // D^alpha S_K = lambda sum_{j <= K-2} (lambda x^alpha)^j / Gamma(1 + j alpha),
  // so the exact gap is lambda times the series tail from j = K - 1.
  double tail = 0.0;
  if (z_abs > 0.0) {
    const std::size_t j0 = terms >= 1 ? terms - 1 : 0;
    const double t0 = std::exp(static_cast<double>(j0) * std::log(z_abs) - std::lgamma(1.0 + j0 * a));
    // ratio t_{j+1}/t_j = |z| Gamma(1+j a)/Gamma(1+(j+1) a), nonincreasing in j
    const double r = z_abs * std::exp(std::lgamma(1.0 + j0 * a) - std::lgamma(1.0 + (j0 + 1) * a)) * (1.0 + 1e-12);
    tail = r < 1.0 ? t0 * (1.0 + 1e-12) / (1.0 - r) : std::numeric_limits<double>::infinity();
  }

  // Rounding: three Gamma evaluations and one power per term, the exponent
  // itself carrying rounding of relative size u, and compensated summation.
  const double abs_terms = d_re.evaluate_abs(x) + d_im.evaluate_abs(x);
  const double max_exponent = static_cast<double>(terms) * a;
  const double per_term = 3.0 * kGammaRelErr + 8.0 * kUnit + std::fabs(std::log(x)) * max_exponent * 4.0 * kUnit;
  const double rounding = per_term * abs_terms + 4.0 * kUnit * std::abs(termwise);

  out.bound = lambda_abs * tail + rounding + lambda_abs * e.err_bound;
  out.within_bound = e.converged && out.residual <= out.bound;
  return out;
}

}  // namespace mlfaudit
