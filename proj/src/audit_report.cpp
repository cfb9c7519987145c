#include "mlfaudit/audit_report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <stdexcept>

#include <json.hpp>

#include "mlfaudit/format.hpp"

namespace mlfaudit {

namespace {

using nlohmann::ordered_json;

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json params_json(const Check& c) {
  ordered_json out = ordered_json::object();
  for (const auto& [key, value] : c.params) {
    std::visit([&](const auto& v) { out[key] = v; }, value);
  }
  return out;
}

std::string param_text(const ParamValue& value) {
  if (const double* d = std::get_if<double>(&value)) return shortest(*d);
  if (const long long* i = std::get_if<long long>(&value)) return std::to_string(*i);
  return std::get<std::string>(value);
}

std::string params_key(const Check& c) { return params_json(c).dump(); }

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CONFIRMS_PAPER:
      return "CONFIRMS_PAPER";
    case Verdict::CONTRADICTS_PAPER:
      return "CONTRADICTS_PAPER";
    case Verdict::INCONCLUSIVE:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Verdict decide(Expectation expected, double residual, double err_bound, double tolerance) {
  if (std::isnan(residual) || std::isnan(err_bound)) return Verdict::INCONCLUSIVE;
  if (expected == Expectation::Holds) {
    if (residual + err_bound <= tolerance) return Verdict::CONFIRMS_PAPER;
  } else {
    if (residual - err_bound > tolerance) return Verdict::CONFIRMS_PAPER;
  }
  if (!std::isfinite(err_bound) || err_bound >= residual) return Verdict::INCONCLUSIVE;
  return Verdict::CONTRADICTS_PAPER;
}

void settle(Check& check) { check.verdict = decide(check.expectation, check.sup, check.err_bound, check.tolerance); }

bool AuditReport::all_confirm() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.verdict == Verdict::CONFIRMS_PAPER; });
}

bool AuditReport::any_inconclusive() const {
  return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return c.verdict == Verdict::INCONCLUSIVE; });
}

AuditReport build_report(std::vector<Check> checks, std::string generated_at) {
  if (checks.empty()) throw std::invalid_argument("build_report: at least one check is required");
  for (const Check& c : checks) {
    if (c.name.empty()) throw std::invalid_argument("build_report: unnamed check");
    if (!std::isfinite(c.tolerance)) throw std::invalid_argument("build_report: check '" + c.name + "' has no tolerance");
  }
  std::vector<std::pair<std::string, Check>> keyed;
  keyed.reserve(checks.size());
  for (Check& c : checks) {
    std::string key = params_key(c);
    keyed.emplace_back(std::move(key), std::move(c));
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) {
    if (l.second.name != r.second.name) return l.second.name < r.second.name;
    return l.first < r.first;
  });

  AuditReport report;
  report.generated_at = std::move(generated_at);
  for (auto& [key, c] : keyed) report.checks.push_back(std::move(c));
  return report;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string to_json(const AuditReport& report) {
  ordered_json root;
  root["schema_version"] = AuditReport::kSchemaVersion;
  root["generated_at"] = report.generated_at;
  root["checks"] = ordered_json::array();
  for (const Check& c : report.checks) {
    ordered_json entry;
    entry["name"] = c.name;
    entry["params"] = params_json(c);
    ordered_json argmax = ordered_json::array();
    for (double v : c.argmax) argmax.push_back(number_or_null(v));
    entry["residual"] = {{"sup", number_or_null(c.sup)}, {"mean", number_or_null(c.mean)}, {"argmax", argmax}};
    entry["err_bound"] = number_or_null(c.err_bound);
    entry["tolerance"] = c.tolerance;
    entry["verdict"] = to_string(c.verdict);
    root["checks"].push_back(std::move(entry));
  }
  return root.dump(2) + "\n";
}

std::string to_markdown(const AuditReport& report) {
  std::string out;
  out += "# Audit report\n\n";
  out += "generated_at: " + report.generated_at + "\n\n";
  out += "| name | params | sup | mean | argmax | err_bound | tolerance | verdict |\n";
  out += "|---|---|---|---|---|---|---|---|\n";
  for (const Check& c : report.checks) {
    std::string params;
    for (const auto& [key, value] : c.params) {
      if (!params.empty()) params += ", ";
      params += key + "=" + param_text(value);
    }
    std::string argmax;
    for (double v : c.argmax) {
      if (!argmax.empty()) argmax += ", ";
      argmax += shortest(v);
    }
    out += "| " + c.name + " | " + params + " | " + shortest(c.sup) + " | " + shortest(c.mean) + " | (" + argmax +
           ") | " + shortest(c.err_bound) + " | " + shortest(c.tolerance) + " | " + to_string(c.verdict) + " |\n";
  }
  return out;
}

}  // namespace mlfaudit
