#pragma once

#include <cstddef>
#include <vector>

#include "mlfaudit/mittag_leffler.hpp"

namespace mlfaudit {

/// coeff * x^exponent, exponent > -1.
struct MonomialTerm {
  double coeff = 0.0;
  double exponent = 0.0;
};

/// Finite sum of monomials kept in canonical form: exponents strictly
/// increasing, terms whose exponents agree within kExponentMergeTol merged,
/// zero coefficients dropped.
class MonomialSum {
 public:
  static constexpr double kExponentMergeTol = 1e-12;

  MonomialSum() = default;
  explicit MonomialSum(std::vector<MonomialTerm> terms);

  void add(MonomialTerm term);
  const std::vector<MonomialTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Compensated evaluation at x >= 0.
  double evaluate(double x) const;
  /// sum |coeff| x^exponent, used for rounding bounds.
  double evaluate_abs(double x) const;

 private:
  std::vector<MonomialTerm> terms_;
};

/// D^alpha x^p = Gamma(1+p) / Gamma(1+p-alpha) x^{p-alpha}.
/// Requires p > -1, 0 < alpha <= 1 and 1 + p - alpha > 0; throws
/// std::domain_error otherwise.
MonomialTerm frac_deriv_monomial(double p, AlphaParam alpha);

/// Linear extension of frac_deriv_monomial in which constants map to zero
/// (the modified Riemann-Liouville convention).
MonomialSum frac_deriv_sum(const MonomialSum& f, AlphaParam alpha);

/// Both sides of a purported fractional differentiation rule at one point.
struct RuleResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // lhs - rhs as computed
  double alpha = 0.0;
  double x = 0.0;
};

/// Product rule D(fg) = g Df + f Dg with f = g = x^{1/2}.
RuleResidual leibniz_residual(AlphaParam alpha, double x);
/// Chain rule D(f o u) = f'(u) D u with f(u) = u^2, u(x) = x^{1/2}.
RuleResidual chain1_residual(AlphaParam alpha, double x);
/// Chain rule D(f o u) = (D_u f)(u) (u')^alpha with f(u) = u^{1/2}, u(x) = x^2.
RuleResidual chain2_residual(AlphaParam alpha, double x);

struct EigenResidual {
  double residual = 0.0;  // |D^alpha S_K - lambda E_alpha(lambda x^alpha)|
  double bound = 0.0;     // truncation tail + certified rounding
  std::size_t terms = 0;  // K actually representable
  bool within_bound = false;
};

/// Applies frac_deriv_sum termwise to the K-term truncation S_K of
/// E_alpha(lambda x^alpha) and compares with lambda E_alpha(lambda x^alpha).
/// Requires 0 < alpha <= 1, 0 < x <= 3, 1 <= K <= 200.
EigenResidual eigen_relation_residual(AlphaParam alpha, ComplexValue lambda, double x, std::size_t K,
                                      const EvalConfig& cfg = {});

}  // namespace mlfaudit
