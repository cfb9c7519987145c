#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mlfaudit {

enum class Verdict { CONFIRMS_PAPER, CONTRADICTS_PAPER, INCONCLUSIVE };

/// What the audited source asserts about the identity under test.
enum class Expectation {
  Holds,  // residual should vanish (alpha = 1, cross-route checks)
  Fails,  // residual should stay away from zero (alpha < 1)
};

const char* to_string(Verdict v);

/// Holds: CONFIRMS when residual + err <= tol.
/// Fails: CONFIRMS when residual - err > tol.
/// Otherwise INCONCLUSIVE when err >= residual (or err is not finite),
/// else CONTRADICTS.
Verdict decide(Expectation expected, double residual, double err_bound, double tolerance);

using ParamValue = std::variant<double, long long, std::string>;

struct Check {
  std::string name;
  std::vector<std::pair<std::string, ParamValue>> params;
  double sup = 0.0;
  double mean = 0.0;
  std::vector<double> argmax;
  double err_bound = 0.0;  // inf when some evaluation was uncertified
  double tolerance = 0.0;
  Expectation expectation = Expectation::Holds;
  Verdict verdict = Verdict::INCONCLUSIVE;
};

/// Sets check.verdict from its own fields.
void settle(Check& check);

struct AuditReport {
  static constexpr int kSchemaVersion = 1;
  std::string generated_at;
  std::vector<Check> checks;

  bool all_confirm() const;
  bool any_inconclusive() const;
};

/// Sorts by name, then by the serialized params. Throws
/// std::invalid_argument for an empty list or a check without a finite
/// tolerance.
AuditReport build_report(std::vector<Check> checks, std::string generated_at);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

std::string to_json(const AuditReport& report);
std::string to_markdown(const AuditReport& report);

}  // namespace mlfaudit
