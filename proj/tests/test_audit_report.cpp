#include <doctest.h>

#include <cmath>
#include <limits>
#include <regex>
#include <stdexcept>

#include "mlfaudit/audit_report.hpp"
#include "mlfaudit/suite.hpp"
#include "support.hpp"

using namespace mlfaudit;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Check make_check(std::string name, double alpha, double sup, double err, double tol,
                 Expectation e = Expectation::Holds) {
  Check c;
  c.name = std::move(name);
  c.params = {{"alpha", alpha}, {"n", 3LL}, {"tag", std::string("t")}};
  c.sup = sup;
  c.mean = sup / 2;
  c.argmax = {1.5};
  c.err_bound = err;
  c.tolerance = tol;
  c.expectation = e;
  settle(c);
  return c;
}

std::string without_timestamp(const std::string& json) {
  return std::regex_replace(json, std::regex("\"generated_at\": \"[^\"]*\""), "\"generated_at\": \"\"");
}

}  // namespace

TEST_CASE("decide for identities that should hold") {
  CHECK(decide(Expectation::Holds, 1e-12, 1e-13, 1e-10) == Verdict::CONFIRMS_PAPER);
  CHECK(decide(Expectation::Holds, 1e-10, 0.0, 1e-10) == Verdict::CONFIRMS_PAPER);
  CHECK(decide(Expectation::Holds, 0.5, 1e-14, 1e-10) == Verdict::CONTRADICTS_PAPER);
  CHECK(decide(Expectation::Holds, 1e-9, 1e-8, 1e-10) == Verdict::INCONCLUSIVE);
  CHECK(decide(Expectation::Holds, 0.5, kInf, 1e-10) == Verdict::INCONCLUSIVE);
  CHECK(decide(Expectation::Holds, kNaN, 0.0, 1e-10) == Verdict::INCONCLUSIVE);
}

TEST_CASE("decide for identities that should fail") {
  CHECK(decide(Expectation::Fails, 0.5, 1e-14, 1e-10) == Verdict::CONFIRMS_PAPER);
  CHECK(decide(Expectation::Fails, 1e-16, 1e-17, 1e-10) == Verdict::CONTRADICTS_PAPER);
  CHECK(decide(Expectation::Fails, 1e-11, 1e-10, 1e-10) == Verdict::INCONCLUSIVE);
  CHECK(decide(Expectation::Fails, 0.5, kInf, 1e-10) == Verdict::INCONCLUSIVE);
  CHECK(decide(Expectation::Fails, 0.5, kNaN, 1e-10) == Verdict::INCONCLUSIVE);
  // inconclusive only when the error bound swamps the residual itself
  CHECK(decide(Expectation::Fails, 1e-10 + 1e-12, 1e-11, 1e-10) == Verdict::CONTRADICTS_PAPER);
}

TEST_CASE("verdict names") {
  CHECK(std::string(to_string(Verdict::CONFIRMS_PAPER)) == "CONFIRMS_PAPER");
  CHECK(std::string(to_string(Verdict::CONTRADICTS_PAPER)) == "CONTRADICTS_PAPER");
  CHECK(std::string(to_string(Verdict::INCONCLUSIVE)) == "INCONCLUSIVE");
}

TEST_CASE("build_report validation and order") {
  CHECK_THROWS_AS(build_report({}, "t"), std::invalid_argument);
  Check no_tol = make_check("a", 0.5, 0.1, 0.0, 1e-10);
  no_tol.tolerance = kNaN;
  CHECK_THROWS_AS(build_report({no_tol}, "t"), std::invalid_argument);
  Check unnamed = make_check("", 0.5, 0.1, 0.0, 1e-10);
  CHECK_THROWS_AS(build_report({unnamed}, "t"), std::invalid_argument);

  const AuditReport r = build_report({make_check("zeta", 0.5, 1, 0, 1), make_check("beta", 0.75, 1, 0, 1),
                                      make_check("beta", 0.25, 1, 0, 1)},
                                     "2000-01-01T00:00:00Z");
  REQUIRE(r.checks.size() == 3);
  CHECK(r.checks[0].name == "beta");
  CHECK(std::get<double>(r.checks[0].params[0].second) == 0.25);
  CHECK(std::get<double>(r.checks[1].params[0].second) == 0.75);
  CHECK(r.checks[2].name == "zeta");
  CHECK(r.generated_at == "2000-01-01T00:00:00Z");
}

TEST_CASE("report summary flags") {
  const AuditReport ok = build_report({make_check("a", 0.5, 1e-12, 1e-14, 1e-10)}, "t");
  CHECK(ok.all_confirm());
  CHECK_FALSE(ok.any_inconclusive());
  const AuditReport mixed =
      build_report({make_check("a", 0.5, 1e-12, 1e-14, 1e-10), make_check("b", 0.5, 1e-9, 1e-8, 1e-10)}, "t");
  CHECK_FALSE(mixed.all_confirm());
  CHECK(mixed.any_inconclusive());
}

TEST_CASE("json output follows the schema and maps non-finite values to null") {
  Check c = make_check("period", 0.5, kNaN, kInf, 1e-10);
  c.argmax = {kNaN};
  const AuditReport r = build_report({c, make_check("product", 1.0, 1e-15, 1e-14, 1e-10)}, "2000-01-01T00:00:00Z");
  const support::json doc = support::json::parse(to_json(r));
  const support::json schema = support::load_json(std::string(MLF_SOURCE_DIR) + "/docs/report.schema.json");
  CHECK(support::validate(doc, schema).empty());

  CHECK(doc["schema_version"] == 1);
  CHECK(doc["checks"][0]["residual"]["sup"].is_null());
  CHECK(doc["checks"][0]["residual"]["argmax"][0].is_null());
  CHECK(doc["checks"][0]["err_bound"].is_null());
  CHECK(doc["checks"][0]["verdict"] == "INCONCLUSIVE");
  CHECK(doc["checks"][0]["params"]["n"].is_number_integer());
  CHECK(doc["checks"][0]["params"]["tag"] == "t");
  CHECK(doc["checks"][1]["verdict"] == "CONFIRMS_PAPER");
}

TEST_CASE("schema validator rejects malformed reports") {
  const support::json schema = support::load_json(std::string(MLF_SOURCE_DIR) + "/docs/report.schema.json");
  support::json doc = support::json::parse(to_json(build_report({make_check("a", 0.5, 1, 0, 1)}, "t")));
  CHECK(support::validate(doc, schema).empty());
  support::json bad = doc;
  bad["checks"][0]["verdict"] = "MAYBE";
  CHECK_FALSE(support::validate(bad, schema).empty());
  bad = doc;
  bad["checks"][0].erase("residual");
  CHECK_FALSE(support::validate(bad, schema).empty());
  bad = doc;
  bad["checks"] = support::json::array();
  CHECK_FALSE(support::validate(bad, schema).empty());
  bad = doc;
  bad["extra"] = 1;
  CHECK_FALSE(support::validate(bad, schema).empty());
}

TEST_CASE("markdown has one row per check") {
  const AuditReport r =
      build_report({make_check("a", 0.5, 1, 0, 1), make_check("b", 0.5, 1, 0, 1), make_check("c", 0.5, 1, 0, 1)}, "t");
  const std::string md = to_markdown(r);
  std::size_t rows = 0;
  std::size_t pos = 0;
  while ((pos = md.find("\n| ", pos)) != std::string::npos) {
    ++rows;
    ++pos;
  }
  CHECK(rows == 1 + 3);  // header + checks
  CHECK(md.find("alpha=0.5, n=3, tag=t") != std::string::npos);
}

TEST_CASE("utc_timestamp format") {
  CHECK(std::regex_match(utc_timestamp(), std::regex(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)")));
}

TEST_CASE("check families") {
  CHECK(check_families().size() == 12);
  CHECK_THROWS_AS(run_family("nope", {}), std::invalid_argument);
}

TEST_CASE("numeric options are echoed into params") {
  SuiteOptions o;
  o.alphas = std::vector<double>{0.3, 0.7};
  o.x_max = 2.5;
  o.step = 0.05;
  const std::vector<Check> checks = run_family("product", o);
  REQUIRE(checks.size() == 2);
  for (const Check& c : checks) {
    CHECK(c.verdict == Verdict::CONFIRMS_PAPER);
    bool seen_x = false, seen_step = false;
    for (const auto& [key, value] : c.params) {
      if (key == "x_max") seen_x = std::get<double>(value) == 2.5;
      if (key == "step") seen_step = std::get<double>(value) == 0.05;
    }
    CHECK(seen_x);
    CHECK(seen_step);
  }
  CHECK(std::get<double>(checks[0].params[0].second) == 0.3);
}

TEST_CASE("default suite confirms and is deterministic") {
  const std::vector<Check> first = run_default_suite();
  CHECK(first.size() >= 8);
  const AuditReport a = build_report(first, utc_timestamp());
  for (const Check& c : a.checks) {
    CAPTURE(c.name);
    CHECK(c.verdict == Verdict::CONFIRMS_PAPER);
  }
  const AuditReport b = build_report(run_default_suite(), "1999-12-31T23:59:59Z");
  CHECK(without_timestamp(to_json(a)) == without_timestamp(to_json(b)));
  CHECK(to_json(a) != to_json(b));
}
