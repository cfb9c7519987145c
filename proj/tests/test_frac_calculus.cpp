#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "mlfaudit/frac_calculus.hpp"
#include "oracles.hpp"

using namespace mlfaudit;

namespace {

const double kSqrtPi = std::sqrt(M_PI);

}  // namespace

TEST_CASE("frac_deriv_monomial examples") {
  const MonomialTerm a = frac_deriv_monomial(1.0, AlphaParam(1.0));
  CHECK(a.coeff == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.exponent == 0.0);

  const MonomialTerm b = frac_deriv_monomial(1.0, AlphaParam(0.5));
  CHECK(std::fabs(b.coeff - 2.0 / kSqrtPi) <= 1e-14);
  CHECK(b.exponent == 0.5);

  const MonomialTerm c = frac_deriv_monomial(0.5, AlphaParam(0.5));
  CHECK(std::fabs(c.coeff - kSqrtPi / 2.0) <= 1e-14);
  CHECK(c.exponent == 0.0);
}

TEST_CASE("frac_deriv_monomial domain") {
  CHECK_THROWS_AS(frac_deriv_monomial(-1.0, AlphaParam(0.5)), std::domain_error);
  CHECK_THROWS_AS(frac_deriv_monomial(-0.6, AlphaParam(0.5)), std::domain_error);
  CHECK_THROWS_AS(frac_deriv_monomial(1.0, AlphaParam(1.5)), std::domain_error);
}

TEST_CASE("frac_deriv_monomial at alpha = 1 is p") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.001, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double p = u(rng);
    const MonomialTerm t = frac_deriv_monomial(p, AlphaParam(1.0));
    CHECK(std::fabs(t.coeff - p) <= 1e-13 * std::max(1.0, p));
  }
}

TEST_CASE("frac_deriv_monomial against 50-digit gamma ratio") {
  for (double a : {0.1, 0.33, 0.5, 0.9}) {
    for (double p : {0.0 + 1e-3, 0.5, 1.0, 2.75, 7.0}) {
      const MonomialTerm t = frac_deriv_monomial(p, AlphaParam(a));
      const double ref = oracle::gamma(1.0 + p) / oracle::gamma(1.0 + p - a);
      CHECK(std::fabs(t.coeff - ref) <= 2e-14 * std::fabs(ref));
    }
  }
}

TEST_CASE("MonomialSum merging and evaluation") {
  MonomialSum s;
  s.add({2.0, 0.5});
  s.add({1.0, 1.0});
  s.add({3.0, 0.5 + 1e-14});
  s.add({-1.0, 1.0});
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].coeff == 5.0);
  CHECK(s.evaluate(4.0) == doctest::Approx(10.0).epsilon(1e-15));

  MonomialSum t({{1.0, 2.0}, {1.0, 0.0}, {0.5, 1.0}});
  REQUIRE(t.terms().size() == 3);
  CHECK(t.terms()[0].exponent < t.terms()[1].exponent);
  CHECK(t.terms()[1].exponent < t.terms()[2].exponent);
  CHECK(t.evaluate(2.0) == doctest::Approx(6.0));
  CHECK(MonomialSum({{-1.0, 1.0}}).evaluate_abs(3.0) == doctest::Approx(3.0));
}

TEST_CASE("frac_deriv_sum examples") {
  CHECK(frac_deriv_sum(MonomialSum({{4.2, 0.0}}), AlphaParam(0.5)).empty());

  const MonomialSum d = frac_deriv_sum(MonomialSum({{1.0, 1.0}, {2.0, 0.5}}), AlphaParam(0.5));
  REQUIRE(d.terms().size() == 2);
  CHECK(d.terms()[0].exponent == doctest::Approx(0.0));
  CHECK(std::fabs(d.terms()[0].coeff - kSqrtPi) <= 1e-14);
  CHECK(d.terms()[1].exponent == doctest::Approx(0.5));
  CHECK(std::fabs(d.terms()[1].coeff - 2.0 / kSqrtPi) <= 1e-14);

  const MonomialSum sq = frac_deriv_sum(MonomialSum({{1.0, 2.0}}), AlphaParam(1.0));
  REQUIRE(sq.terms().size() == 1);
  CHECK(sq.terms()[0].coeff == doctest::Approx(2.0));
  CHECK(sq.terms()[0].exponent == doctest::Approx(1.0));
}

TEST_CASE("leibniz examples") {
  const RuleResidual one = leibniz_residual(AlphaParam(1.0), 5.0);
  CHECK(std::fabs(one.residual) <= 1e-12);

  const RuleResidual h = leibniz_residual(AlphaParam(0.5), 1.0);
  CHECK(std::fabs(h.lhs - 2.0 / kSqrtPi) <= 1e-12);
  CHECK(std::fabs(h.rhs - kSqrtPi) <= 1e-12);
  CHECK(std::fabs(h.residual - (2.0 / kSqrtPi - kSqrtPi)) <= 1e-12);
  CHECK(h.residual == doctest::Approx(-0.644075).epsilon(1e-6));
  CHECK(h.residual == h.lhs - h.rhs);

  const RuleResidual h4 = leibniz_residual(AlphaParam(0.5), 4.0);
  CHECK(std::fabs(h4.lhs - 4.0 / kSqrtPi) <= 1e-12);
  CHECK(std::fabs(h4.rhs - 2.0 * kSqrtPi) <= 1e-12);
}

TEST_CASE("chain rule examples") {
  CHECK(std::fabs(chain1_residual(AlphaParam(1.0), 2.0).residual) <= 1e-12);
  const RuleResidual c = chain1_residual(AlphaParam(0.5), 1.0);
  CHECK(std::fabs(c.lhs - 2.0 / kSqrtPi) <= 1e-12);
  CHECK(std::fabs(c.rhs - kSqrtPi) <= 1e-12);

  const RuleResidual q = chain1_residual(AlphaParam(0.25), 1.0);
  CHECK(std::fabs(q.lhs - 1.0 / oracle::gamma(1.75)) <= 1e-12);
  CHECK(std::fabs(q.rhs - kSqrtPi / oracle::gamma(1.25)) <= 1e-12);
  CHECK(q.lhs == doctest::Approx(1.0880652).epsilon(1e-7));
  CHECK(q.rhs == doctest::Approx(1.9554821).epsilon(1e-7));

  CHECK(std::fabs(chain2_residual(AlphaParam(1.0), 3.0).residual) <= 1e-12);
  const RuleResidual c2 = chain2_residual(AlphaParam(0.5), 1.0);
  CHECK(std::fabs(c2.rhs - std::sqrt(M_PI / 2.0)) <= 1e-12);
  CHECK(std::fabs(c2.lhs - 2.0 / kSqrtPi) <= 1e-12);
}

TEST_CASE("rule residuals vanish at alpha = 1") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(1e-6, 5.0);
  const AlphaParam one(1.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    CHECK(std::fabs(leibniz_residual(one, x).residual) <= 1e-12);
    CHECK(std::fabs(chain1_residual(one, x).residual) <= 1e-12);
    CHECK(std::fabs(chain2_residual(one, x).residual) <= 1e-12);
  }
}

TEST_CASE("rule residuals stay away from zero below alpha = 1") {
  for (int j = 1; j <= 9; ++j) {
    const AlphaParam a(0.1 * j);
    CHECK(std::fabs(leibniz_residual(a, 1.0).residual) >= 1e-2);
    CHECK(std::fabs(chain1_residual(a, 1.0).residual) >= 1e-2);
    CHECK(std::fabs(chain2_residual(a, 1.0).residual) >= 1e-2);
  }
}

TEST_CASE("rule residual scaling in x") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ua(0.05, 0.95), ux(0.1, 5.0);
  for (int i = 0; i < 100; ++i) {
    const AlphaParam a(ua(rng));
    const double x = ux(rng);
    const double s = std::pow(x, 1.0 - a.value());
    for (auto rule : {leibniz_residual, chain1_residual, chain2_residual}) {
      const double r1 = rule(a, 1.0).residual;
      CHECK(std::fabs(rule(a, x).residual - r1 * s) <= 1e-12 * std::fabs(r1 * s));
    }
  }
}

TEST_CASE("chain rule right-hand sides differ by 2^(alpha-1)") {
  for (int j = 1; j <= 20; ++j) {
    const AlphaParam a(0.05 * j);
    const double r1 = chain1_residual(a, 1.3).rhs;
    const double r2 = chain2_residual(a, 1.3).rhs;
    CHECK(std::fabs(r2 - std::pow(2.0, a.value() - 1.0) * r1) <= 1e-13 * std::fabs(r1));
  }
}

TEST_CASE("rule residual domain") {
  CHECK_THROWS_AS(leibniz_residual(AlphaParam(0.5), 0.0), std::domain_error);
  CHECK_THROWS_AS(chain1_residual(AlphaParam(0.5), -1.0), std::domain_error);
  CHECK_THROWS_AS(chain2_residual(AlphaParam(1.5), 1.0), std::domain_error);
}

TEST_CASE("eigen relation examples") {
  const EigenResidual e1 = eigen_relation_residual(AlphaParam(1.0), {1.0, 0.0}, 1.0, 60);
  CHECK(e1.residual <= 1e-12);
  CHECK(e1.within_bound);

  const EigenResidual e2 = eigen_relation_residual(AlphaParam(0.5), {1.0, 0.0}, 1.0, 80);
  CHECK(e2.within_bound);
  CHECK(e2.residual <= e2.bound);

  const EigenResidual e3 = eigen_relation_residual(AlphaParam(0.7), {-1.0, 0.0}, 2.0, 100);
  CHECK(e3.within_bound);
}

TEST_CASE("eigen relation truncation bound tracks K") {
  // a short truncation leaves a visible tail that the bound must cover
  const EigenResidual shortk = eigen_relation_residual(AlphaParam(0.5), {1.0, 0.0}, 2.0, 5);
  CHECK(shortk.residual > 1e-3);
  CHECK(shortk.within_bound);
  CHECK(shortk.terms == 5);

  // Gamma(1 + k alpha) leaves the double range before K = 200 once alpha > 0.85
  const EigenResidual capped = eigen_relation_residual(AlphaParam(0.9), {0.0, 1.0}, 3.0, 200);
  CHECK(capped.terms < 200);
  CHECK(capped.within_bound);
}

TEST_CASE("eigen relation domain") {
  CHECK_THROWS_AS(eigen_relation_residual(AlphaParam(0.5), {1.0, 0.0}, 0.0, 10), std::domain_error);
  CHECK_THROWS_AS(eigen_relation_residual(AlphaParam(0.5), {1.0, 0.0}, 3.5, 10), std::domain_error);
  CHECK_THROWS_AS(eigen_relation_residual(AlphaParam(0.5), {1.0, 0.0}, 1.0, 0), std::domain_error);
  CHECK_THROWS_AS(eigen_relation_residual(AlphaParam(0.5), {1.0, 0.0}, 1.0, 201), std::domain_error);
}
