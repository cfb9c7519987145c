#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlfaudit/audit_report.hpp"
#include "mlfaudit/special_core.hpp"

namespace mlfaudit {

/// Knobs shared by the check families. Unset optionals fall back to each
/// family's own defaults.
struct SuiteOptions {
  std::optional<std::vector<double>> alphas;
  ComplexValue lambda{1.0, 0.0};
  std::optional<double> x_max;
  std::optional<double> step;
  std::optional<double> x;
  std::optional<double> m_min;
  std::optional<double> m_max;
  std::optional<double> abs_tol;  // replaces every evaluator's abs_tol
  double tolerance = 1e-10;       // identity tolerance for alpha-indexed checks
};

/// closed_forms, half_closed_forms, product, cauchy, semigroup, inverse,
/// period, rules, eigen, monotonicity, decomposition, duplication
const std::vector<std::string>& check_families();

/// Throws std::invalid_argument for an unknown family.
std::vector<Check> run_family(const std::string& family, const SuiteOptions& options);

/// Every family with its defaults (options still apply).
std::vector<Check> run_default_suite(const SuiteOptions& options = {});

}  // namespace mlfaudit
