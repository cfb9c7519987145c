#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mlfaudit/quadrature.hpp"

using namespace mlfaudit;

TEST_CASE("smooth integrands") {
  const QuadratureResult r = integrate_adaptive([](double t) { return std::exp(-t); }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(std::fabs(r.value - (1.0 - std::exp(-1.0))) <= 1e-14);

  const QuadratureResult s = integrate_adaptive([](double t) { return std::sin(t); }, 0.0, M_PI);
  CHECK(std::fabs(s.value - 2.0) <= 1e-13);
}

TEST_CASE("endpoint singularity needs subdivision") {
  QuadratureConfig q;
  q.abs_tol = 1e-10;
  q.rel_tol = 1e-10;
  const QuadratureResult r = integrate_adaptive([](double t) { return std::pow(t, -0.5); }, 0.0, 1.0, q);
  CHECK(r.converged);
  CHECK(r.subdivisions > 1);
  CHECK(std::fabs(r.value - 2.0) <= 1e-9);
}

TEST_CASE("error estimate covers the true error") {
  QuadratureConfig q;
  q.abs_tol = 1e-7;
  q.rel_tol = 1e-7;
  const QuadratureResult r = integrate_adaptive([](double t) { return 1.0 / (1e-3 + t * t); }, -1.0, 1.0, q);
  const double exact = 2.0 / std::sqrt(1e-3) * std::atan(1.0 / std::sqrt(1e-3));
  CHECK(r.converged);
  CHECK(std::fabs(r.value - exact) <= std::max(r.error, 1e-12));
}

TEST_CASE("budget exhaustion is reported") {
  QuadratureConfig q;
  q.abs_tol = 1e-15;
  q.rel_tol = 1e-15;
  q.max_subdivisions = 3;
  const QuadratureResult r = integrate_adaptive([](double t) { return std::sin(1.0 / (t + 1e-3)); }, 0.0, 1.0, q);
  CHECK_FALSE(r.converged);
  CHECK(r.subdivisions <= 3);
}

TEST_CASE("configuration is validated") {
  QuadratureConfig q;
  q.abs_tol = 0.0;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q = {};
  q.max_subdivisions = 0;
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0, q), std::invalid_argument);
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 1.0, 0.0), std::invalid_argument);
}
