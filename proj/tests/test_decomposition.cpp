#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <set>

#include "mlfaudit/decomposition.hpp"
#include "mlfaudit/mittag_leffler.hpp"

using namespace mlfaudit;
using Arg = GVariantSpec::ArgPower;
using Kernel = GVariantSpec::KernelPower;

namespace {

QuadratureConfig tight() {
  QuadratureConfig q;
  q.abs_tol = 1e-9;
  q.rel_tol = 1e-9;
  return q;
}

GVariantSpec standard_variant() {
  GVariantSpec v;
  v.exp_sign = GVariantSpec::ExpSign::STANDARD_POSITIVE;
  v.arg_power = Arg::X;
  v.prefactor = GVariantSpec::Prefactor::ONE_OVER_ALPHA;
  v.kernel_power = Kernel::S_TO_2ALPHA_MINUS_1;
  return v;
}

}  // namespace

TEST_CASE("variant enumeration") {
  const auto all = GVariantSpec::all();
  CHECK(all.size() == 32);
  CHECK(all.front() == GVariantSpec::paper_literal());
  std::set<std::string> names;
  for (const auto& v : all) names.insert(v.to_string());
  CHECK(names.size() == 32);
  CHECK(GVariantSpec::paper_literal().to_string() == "pi/(2a),neg,x^2a,2/a,s^2a");
  CHECK(standard_variant().to_string() == "pi/(2a),pos,x,1/a,s^(2a-1)");
}

TEST_CASE("f_component sign is fixed by sin(2 alpha pi)") {
  const AlphaParam a(0.75);
  for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    for (Arg p : {Arg::X, Arg::X_TO_2ALPHA}) {
      for (Kernel k : {Kernel::S_TO_2ALPHA, Kernel::S_TO_2ALPHA_MINUS_1}) {
        const FComponent f = f_component(a, x, tight(), p, k);
        CHECK(f.converged);
        CHECK(f.value < 0.0);
      }
    }
  }
}

TEST_CASE("f_component near zero") {
  const AlphaParam a(0.75);
  const FComponent std0 = f_component(a, 0.0, tight(), Arg::X);
  CHECK(std::fabs(std0.value - (1.0 - 1.0 / 0.75)) <= 1e-15);
  const FComponent lit0 = f_component(a, 0.0, tight(), Arg::X_TO_2ALPHA, Kernel::S_TO_2ALPHA);
  CHECK(std::fabs(lit0.value + 2.0 / 3.0) <= 1e-15);

  // quadrature at x = 1e-6 approaches the closed-form limits, not 1 - 2/alpha
  const FComponent near_std = f_component(a, 1e-6, tight(), Arg::X);
  CHECK(std::fabs(near_std.value - std0.value) <= 1e-5);
  const FComponent near_lit = f_component(a, 1e-6, tight(), Arg::X_TO_2ALPHA, Kernel::S_TO_2ALPHA);
  CHECK(std::fabs(near_lit.value - lit0.value) <= 1e-3);
  CHECK(std::fabs(near_lit.value - (1.0 - 2.0 / 0.75)) > 0.9);
}

TEST_CASE("f_component quadrature is stable under a larger budget") {
  QuadratureConfig q = tight();
  q.abs_tol = q.rel_tol = 1e-12;
  QuadratureConfig q2 = q;
  q2.max_subdivisions *= 2;
  for (double x : {0.25, 1.0, 3.0}) {
    const FComponent f1 = f_component(AlphaParam(0.75), x, q, Arg::X);
    const FComponent f2 = f_component(AlphaParam(0.75), x, q2, Arg::X);
    CHECK(std::fabs(f1.value - f2.value) <= std::max(f1.quad_err, 1e-15));
  }
}

TEST_CASE("g_component examples") {
  const AlphaParam a(0.75);
  CHECK(g_component(a, 0.0, GVariantSpec::paper_literal()) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  GVariantSpec one = GVariantSpec::paper_literal();
  one.prefactor = GVariantSpec::Prefactor::ONE_OVER_ALPHA;
  CHECK(g_component(a, 0.0, one) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK((1.0 - 2.0 / 0.75) + g_component(a, 0.0, GVariantSpec::paper_literal()) == doctest::Approx(1.0));
}

TEST_CASE("g_component bounded by its envelope") {
  for (double alpha : {0.55, 0.75, 0.95}) {
    const AlphaParam a(alpha);
    for (const GVariantSpec& v : GVariantSpec::all()) {
      const double theta = v.angle_parse == GVariantSpec::AngleParse::PI_OVER_2ALPHA ? M_PI / (2 * alpha) : M_PI * alpha / 2;
      const double sigma = v.exp_sign == GVariantSpec::ExpSign::AS_PRINTED_NEGATIVE ? -1.0 : 1.0;
      const double pre = v.prefactor == GVariantSpec::Prefactor::TWO_OVER_ALPHA ? 2.0 / alpha : 1.0 / alpha;
      for (double x = 0.0; x <= 3.0; x += 0.1) {
        const double arg = v.arg_power == Arg::X ? x : std::pow(x, 2 * alpha);
        const double envelope = pre * std::exp(sigma * arg * std::cos(theta));
        CHECK(std::fabs(g_component(a, x, v)) <= envelope * (1 + 1e-15));
      }
    }
  }
}

TEST_CASE("reconciliation at alpha = 0.75") {
  const Reconciliation r = reconcile_decomposition(AlphaParam(0.75), default_decomposition_grid(), tight());
  CHECK(r.best_variant == standard_variant());
  CHECK(r.best_sup <= 1e-6);
  CHECK(r.literal_sup > 1.0);
  CHECK(r.variants.size() == 32);
  CHECK(r.records.size() == default_decomposition_grid().size());
  CHECK(r.max_quad_err <= 1e-8);
  CHECK(r.max_series_err <= 1e-13);
  for (const DecompositionRecord& rec : r.records) {
    CHECK(rec.best_variant == r.best_variant);
    CHECK(rec.best_residual <= r.best_sup);
    CHECK(rec.literal_residual <= r.literal_sup);
    CHECK(rec.g_values.size() == 32);
    // cross-check against an independent series evaluation
    CHECK(std::fabs(rec.series_value - cos_via_duplication(AlphaParam(0.75), rec.x).value.real()) <= 1e-13);
  }
}

TEST_CASE("one dialect across (1/2, 1)") {
  const std::vector<double> grid = {0.1, 0.4, 1.0, 1.7, 2.5, 3.0};
  for (double alpha : {0.51, 0.6, 0.9, 0.99}) {
    const Reconciliation r = reconcile_decomposition(AlphaParam(alpha), grid, tight());
    CAPTURE(alpha);
    CHECK(r.best_variant == standard_variant());
    CHECK(r.best_sup <= 1e-6);
    for (const DecompositionRecord& rec : r.records) CHECK(rec.series_value < 1.0);
  }
}

TEST_CASE("reconciliation domain") {
  CHECK_THROWS_AS(reconcile_decomposition(AlphaParam(0.5), {1.0}), std::domain_error);
  CHECK_THROWS_AS(reconcile_decomposition(AlphaParam(1.0), {1.0}), std::domain_error);
  CHECK_THROWS_AS(reconcile_decomposition(AlphaParam(0.75), {0.05}), std::domain_error);
  CHECK_THROWS_AS(reconcile_decomposition(AlphaParam(0.75), {3.5}), std::domain_error);
  CHECK_THROWS_AS(reconcile_decomposition(AlphaParam(0.75), {}), std::invalid_argument);
  CHECK_THROWS_AS(f_component(AlphaParam(0.75), -1.0, tight(), Arg::X), std::domain_error);
}

TEST_CASE("quadrature failure surfaces") {
  QuadratureConfig starved = tight();
  starved.abs_tol = starved.rel_tol = 1e-15;
  starved.max_subdivisions = 1;
  const FComponent f = f_component(AlphaParam(0.75), 0.5, starved, Arg::X);
  CHECK_FALSE(f.converged);
  CHECK(std::isnan(f.value));
  CHECK_THROWS_AS(reconcile_decomposition(AlphaParam(0.75), {0.5}, starved), std::runtime_error);
}
