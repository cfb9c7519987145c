#include "mlfaudit/identity_audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mlfaudit/compensated_sum.hpp"
#include "mlfaudit/parallel.hpp"

namespace mlfaudit {

namespace {

constexpr double kUnit = 0x1p-53;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kScanStep = 1e-3;
constexpr double kGoldenTol = 1e-13;

void require_unit_interval(AlphaParam alpha, const char* who) {
  if (alpha.value() > 1.0) throw std::domain_error(std::string(who) + ": alpha must lie in (0, 1]");
}

double slack_reach(double r) { return r * (1.0 + 1e-12); }

struct TrigPoint {
  double residual;
  double err;
  bool converged;
};

// |E_a(i M^a) - 1| from the real even/odd route
TrigPoint unit_gap(const MittagLeffler& ml, double M) {
  const FracTrigPair t = ml.trig(M);
  const double residual = std::hypot(t.cos_part - 1.0, t.sin_part);
  return {residual, t.cos_err + t.sin_err + 2.0 * kUnit * (residual + 1.0), t.converged};
}

}  // namespace

std::size_t GridAxis::size() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || !(step > 0.0) || start > stop) {
    throw std::invalid_argument("GridAxis: need finite start <= stop and step > 0");
  }
  const double span = (stop - start) / step;
  if (span > 1e8) throw std::invalid_argument("GridAxis: too many points");
  return static_cast<std::size_t>(std::floor(span * (1.0 + 1e-9) + 1e-9)) + 1;
}

void ResidualGrid::finalize() {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("ResidualGrid: empty grid");
  if (point_err.size() != n) throw std::logic_error("ResidualGrid: size mismatch");
  certified.assign(n, false);
  sup_norm = 0.0;
  raw_sup = 0.0;
  uniform_err_bound = 0.0;
  CompensatedSum total;
  std::size_t best = n;
  std::size_t raw_best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    certified[i] = point_err[i] <= values[i];
    total += values[i];
    uniform_err_bound = std::max(uniform_err_bound, point_err[i]);
    if (values[i] > raw_sup) {
      raw_sup = values[i];
      raw_best = i;
    }
    if (certified[i] && (best == n || values[i] > sup_norm)) {
      sup_norm = values[i];
      best = i;
    }
  }
  mean = total.value() / static_cast<double>(n);
  const std::size_t at = best == n ? raw_best : best;
  argmax.clear();
  if (axes.size() == 1) {
    argmax.push_back(axes[0].at(at));
  } else {
    const std::size_t ny = axes[1].size();
    argmax.push_back(axes[0].at(at / ny));
    argmax.push_back(axes[1].at(at % ny));
  }
}

CauchyCoefficient cauchy_coefficient(std::size_t n, AlphaParam alpha) {
  require_unit_interval(alpha, "cauchy_coefficient");
  if (n > 60) throw std::domain_error("cauchy_coefficient: n must lie in [0, 60]");
  const double a = alpha.value();
  CompensatedSum sum;
  for (std::size_t k = 0; k <= n; ++k) {
    const double sign = (n - k) % 2 == 0 ? 1.0 : -1.0;
    sum += sign / (gamma_pos(1.0 + a * static_cast<double>(k)) * gamma_pos(1.0 + a * static_cast<double>(n - k)));
  }
  return {n, a, sum.value()};
}

std::vector<ResidualGrid> product_residual_grid(const std::vector<double>& alphas, double x_max, double step,
                                                const EvalConfig& cfg) {
  if (alphas.empty()) throw std::invalid_argument("product_residual_grid: no alpha values");
  if (!(step > 0.0) || !(step <= x_max) || !(x_max <= 6.0)) {
    throw std::domain_error("product_residual_grid: need 0 < step <= x_max <= 6");
  }
  const GridAxis axis{0.0, x_max, step};
  const std::size_t n = axis.size();

  std::vector<ResidualGrid> out;
  for (double a : alphas) {
    const AlphaParam alpha(a);
    require_unit_interval(alpha, "product_residual_grid");
    const MittagLeffler ml(alpha, slack_reach(std::pow(x_max, a)), cfg);

    ResidualGrid grid;
    grid.alpha = a;
    grid.axes = {axis};
    grid.values.resize(n);
    grid.signed_values.resize(n);
    grid.point_err.resize(n);
    parallel_for(n, [&](std::size_t i) {
      const FracTrigPair t = ml.trig(axis.at(i));
      const double c = t.cos_part;
      const double s = t.sin_part;
      const double p = c * c + s * s;
      grid.signed_values[i] = p - 1.0;
      grid.values[i] = std::fabs(p - 1.0);
      grid.point_err[i] = t.converged ? 2.0 * std::fabs(c) * t.cos_err + 2.0 * std::fabs(s) * t.sin_err +
                                            t.cos_err * t.cos_err + t.sin_err * t.sin_err + 3.0 * kUnit * p
                                      : kInf;
    });
    grid.finalize();
    out.push_back(std::move(grid));
  }
  return out;
}

ResidualGrid semigroup_residual_grid(AlphaParam alpha, ComplexValue lambda, double xy_max, double step,
                                     const EvalConfig& cfg) {
  require_unit_interval(alpha, "semigroup_residual_grid");
  if (!(step > 0.0) || !(step <= xy_max) || !std::isfinite(xy_max)) {
    throw std::domain_error("semigroup_residual_grid: need 0 < step <= xy_max");
  }
  const GridAxis axis{0.0, xy_max, step};
  const std::size_t n = axis.size();
  const double a = alpha.value();

  // E at (n step)^a for n = 0 .. 2(N-1) covers every x, y and x + y.
  const std::size_t table_size = 2 * n - 1;
  const double far = static_cast<double>(table_size - 1) * step;
  const MittagLeffler ml(alpha, slack_reach(std::abs(lambda) * std::pow(far, a)), cfg);
  std::vector<SeriesEval> table(table_size);
  parallel_for(table_size, [&](std::size_t k) { table[k] = ml.at_power(lambda, static_cast<double>(k) * step); });

  ResidualGrid grid;
  grid.alpha = a;
  grid.axes = {axis, axis};
  grid.values.resize(n * n);
  grid.signed_values.resize(n * n);
  grid.point_err.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const SeriesEval& ex = table[i];
      const SeriesEval& ey = table[j];
      const SeriesEval& es = table[i + j];
      const ComplexValue product = ex.value * ey.value;
      const ComplexValue diff = es.value - product;
      const std::size_t at = i * n + j;
      grid.signed_values[at] = diff.real();
      grid.values[at] = std::abs(diff);
      const bool ok = ex.converged && ey.converged && es.converged;
      grid.point_err[at] = ok ? es.err_bound + std::abs(ex.value) * ey.err_bound + std::abs(ey.value) * ex.err_bound +
                                    ex.err_bound * ey.err_bound + 4.0 * kUnit * (std::abs(es.value) + std::abs(product))
                              : kInf;
    }
  }
  grid.finalize();
  return grid;
}

InverseResidual inverse_relation_residual(AlphaParam alpha, double x, const EvalConfig& cfg) {
  require_unit_interval(alpha, "inverse_relation_residual");
  if (!std::isfinite(x) || !(x > 0.0)) throw std::domain_error("inverse_relation_residual: x must be positive");
  const double a = alpha.value();
  const MittagLeffler ml(alpha, slack_reach(std::pow(x, a)), cfg);

  const SeriesEval plus = ml.at_power({0.0, 1.0}, x);
  const SeriesEval minus = ml.at_power({0.0, -1.0}, x);

  // i (-x)^a = i e^{i a pi} x^a
  const DDComplex phase = unit_phase(a);
  const ComplexValue lambda{-static_cast<double>(phase.im), static_cast<double>(phase.re)};
  const SeriesEval branch = ml.at_power(lambda, x, 0x1p-52);

  InverseResidual out;
  const ComplexValue product = plus.value * minus.value;
  out.r1 = std::abs(product - 1.0);
  out.err1 = std::abs(minus.value) * plus.err_bound + std::abs(plus.value) * minus.err_bound +
             plus.err_bound * minus.err_bound + 4.0 * kUnit * (std::abs(product) + 1.0);
  out.r2 = std::abs(branch.value - minus.value);
  out.err2 = branch.err_bound + minus.err_bound + 2.0 * kUnit * out.r2;
  out.certified = plus.converged && minus.converged && branch.converged;
  if (!out.certified) {
    out.err1 = kInf;
    out.err2 = kInf;
  }
  return out;
}

PeriodSearchResult period_search(AlphaParam alpha, double m_min, double m_max, const EvalConfig& cfg) {
  require_unit_interval(alpha, "period_search");
  if (!std::isfinite(m_min) || !std::isfinite(m_max) || !(m_min > 0.0) || !(m_min < m_max) || m_max > 50.0) {
    throw std::domain_error("period_search: need 0 < m_min < m_max <= 50");
  }
  const double a = alpha.value();
  const MittagLeffler ml(alpha, slack_reach(std::pow(m_max, a)), cfg);

  const GridAxis axis{m_min, m_max, kScanStep};
  std::vector<double> ms(axis.size());
  for (std::size_t i = 0; i < ms.size(); ++i) ms[i] = std::min(axis.at(i), m_max);
  if (ms.back() < m_max) ms.push_back(m_max);

  std::vector<TrigPoint> scan(ms.size());
  parallel_for(ms.size(), [&](std::size_t i) { scan[i] = unit_gap(ml, ms[i]); });

  PeriodSearchResult out;
  out.alpha = a;
  out.m_min = m_min;
  out.m_max = m_max;

  std::size_t usable = scan.size();
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (!scan[i].converged) {
      usable = i;
      break;
    }
  }
  if (usable == 0) throw std::runtime_error("period_search: no certified evaluation in the window");
  out.window_shrunk = usable < scan.size();
  out.effective_max = ms[usable - 1];
  for (std::size_t i = 0; i < usable; ++i) out.uniform_err_bound = std::max(out.uniform_err_bound, scan[i].err);

  std::size_t best = 0;
  for (std::size_t i = 1; i < usable; ++i) {
    if (scan[i].residual < scan[best].residual) best = i;
  }
  out.m_star = ms[best];
  out.residual_star = scan[best].residual;
  out.err_star = scan[best].err;

  auto refine = [&](double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    TrigPoint fc = unit_gap(ml, c);
    TrigPoint fd = unit_gap(ml, d);
    while (hi - lo > kGoldenTol * std::max(1.0, std::fabs(lo))) {
      if (fc.residual <= fd.residual) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - inv_phi * (hi - lo);
        fc = unit_gap(ml, c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + inv_phi * (hi - lo);
        fd = unit_gap(ml, d);
      }
    }
    for (const auto& [m, p] : {std::pair{c, fc}, std::pair{d, fd}}) {
      if (p.converged && p.residual < out.residual_star) {
        out.m_star = m;
        out.residual_star = p.residual;
        out.err_star = p.err;
      }
    }
  };

  for (std::size_t i = 0; i < usable; ++i) {
    const bool left_ok = i == 0 || scan[i].residual <= scan[i - 1].residual;
    const bool right_ok = i + 1 == usable || scan[i].residual <= scan[i + 1].residual;
    if (!left_ok || !right_ok) continue;
    ++out.local_minima;
    const double lo = ms[i == 0 ? 0 : i - 1];
    const double hi = ms[i + 1 == usable ? i : i + 1];
    if (lo < hi) refine(lo, hi);
  }
  return out;
}

double translated_period_residual(AlphaParam alpha, double M, double x_max, double step, const EvalConfig& cfg) {
  require_unit_interval(alpha, "translated_period_residual");
  if (!(M > 0.0) || !(step > 0.0) || !(x_max >= 0.0) || x_max + M > 50.0) {
    throw std::domain_error("translated_period_residual: need M > 0, step > 0, x_max + M <= 50");
  }
  const double a = alpha.value();
  const MittagLeffler ml(alpha, slack_reach(std::pow(x_max + M, a)), cfg);
  const GridAxis axis{0.0, x_max, step};
  std::vector<double> gap(axis.size());
  parallel_for(gap.size(), [&](std::size_t i) {
    const double x = axis.at(i);
    const FracTrigPair u = ml.trig(x);
    const FracTrigPair v = ml.trig(x + M);
    gap[i] = (u.converged && v.converged) ? std::hypot(u.cos_part - v.cos_part, u.sin_part - v.sin_part)
                                          : std::numeric_limits<double>::quiet_NaN();
  });
  double sup = 0.0;
  for (double g : gap) {
    if (std::isnan(g)) return g;
    sup = std::max(sup, g);
  }
  return sup;
}

MonotonicityResult monotonicity_audit(AlphaParam alpha, double x_max, double step, const EvalConfig& cfg) {
  const double a = alpha.value();
  if (!(a <= 0.5)) throw std::domain_error("monotonicity_audit: alpha must lie in (0, 1/2]");
  if (!(step > 0.0) || !(x_max > 0.0) || x_max > 5.0) {
    throw std::domain_error("monotonicity_audit: need step > 0 and 0 < x_max <= 5");
  }
  const AlphaParam doubled(2.0 * a);
  const MittagLeffler ml(doubled, slack_reach(std::pow(x_max, 2.0 * a)), cfg);
  const GridAxis axis{0.0, x_max, step};
  std::vector<SeriesEval> values(axis.size());
  parallel_for(values.size(), [&](std::size_t i) { values[i] = ml.at_power({-1.0, 0.0}, axis.at(i)); });

  MonotonicityResult out;
  out.alpha = a;
  out.max_difference = -kInf;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.uniform_err_bound = std::max(out.uniform_err_bound, values[i].converged ? values[i].err_bound : kInf);
    if (i + 1 == values.size()) break;
    const double d = values[i + 1].value.real() - values[i].value.real();
    if (d > out.max_difference) {
      out.max_difference = d;
      out.argmax_x = axis.at(i);
    }
  }
  if (values.size() == 1) out.max_difference = 0.0;
  out.nonincreasing = out.max_difference <= 1e-12;
  return out;
}

}  // namespace mlfaudit
