#include "mlfaudit/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mlfaudit/parallel.hpp"

namespace mlfaudit {

namespace {

using std::numbers::pi;

void require_open_half_unit(AlphaParam alpha, const char* who) {
  const double a = alpha.value();
  if (!(a > 0.5 && a < 1.0)) throw std::domain_error(std::string(who) + ": alpha must lie in (1/2, 1)");
}

double argument(double alpha, double x, GVariantSpec::ArgPower p) {
  return p == GVariantSpec::ArgPower::X ? x : std::pow(x, 2.0 * alpha);
}

double kernel_exponent(double alpha, GVariantSpec::KernelPower k) {
  return k == GVariantSpec::KernelPower::S_TO_2ALPHA ? 2.0 * alpha : 2.0 * alpha - 1.0;
}

int f_slot(GVariantSpec::ArgPower p, GVariantSpec::KernelPower k) {
  return 2 * static_cast<int>(p) + static_cast<int>(k);
}

}  // namespace

std::vector<GVariantSpec> GVariantSpec::all() {
  std::vector<GVariantSpec> out;
  for (int angle = 0; angle < 2; ++angle)
    for (int sign = 0; sign < 2; ++sign)
      for (int arg = 0; arg < 2; ++arg)
        for (int pre = 0; pre < 2; ++pre)
          for (int kernel = 0; kernel < 2; ++kernel) {
            out.push_back({static_cast<AngleParse>(angle), static_cast<ExpSign>(sign), static_cast<ArgPower>(arg),
                           static_cast<Prefactor>(pre), static_cast<KernelPower>(kernel)});
          }
  return out;
}

std::string GVariantSpec::to_string() const {
  std::string s;
  s += angle_parse == AngleParse::PI_OVER_2ALPHA ? "pi/(2a)" : "(pi/2)a";
  s += exp_sign == ExpSign::AS_PRINTED_NEGATIVE ? ",neg" : ",pos";
  s += arg_power == ArgPower::X_TO_2ALPHA ? ",x^2a" : ",x";
  s += prefactor == Prefactor::TWO_OVER_ALPHA ? ",2/a" : ",1/a";
  s += kernel_power == KernelPower::S_TO_2ALPHA ? ",s^2a" : ",s^(2a-1)";
  return s;
}

FComponent f_component(AlphaParam alpha, double x, const QuadratureConfig& q, GVariantSpec::ArgPower arg_power,
                       GVariantSpec::KernelPower kernel_power) {
  require_open_half_unit(alpha, "f_component");
  if (!std::isfinite(x) || x < 0.0) throw std::domain_error("f_component: x must be finite and >= 0");
  q.validate();
  const double a = alpha.value();

  FComponent out;
  if (x == 0.0) {
    out.value = kernel_power == GVariantSpec::KernelPower::S_TO_2ALPHA ? std::cos(pi / (2.0 * a)) / a : 1.0 - 1.0 / a;
    out.converged = true;
    return out;
  }

  const double A = argument(a, x, arg_power);
  const double kappa = kernel_exponent(a, kernel_power);
  const double c = std::cos(2.0 * a * pi);
  const double s2 = std::sin(2.0 * a * pi);

  auto head = [=](double s) {
    const double u = std::pow(s, 2.0 * a);
    return std::exp(-s * A) * std::pow(s, kappa) / (u * u + 2.0 * u * c + 1.0);
  };
  // s = 1/t on [1, inf)
  const double tail_power = 4.0 * a - kappa - 2.0;
  auto tail = [=](double t) {
    const double decay = std::exp(-A / t);
    if (decay == 0.0) return 0.0;
    const double u = std::pow(t, 2.0 * a);
    return decay * std::pow(t, tail_power) / (1.0 + 2.0 * u * c + u * u);
  };

  QuadratureConfig half = q;
  half.abs_tol = 0.5 * q.abs_tol;
  const QuadratureResult r1 = integrate_adaptive(head, 0.0, 1.0, half);
  const QuadratureResult r2 = integrate_adaptive(tail, 0.0, 1.0, half);

  const double scale = s2 / pi;
  out.converged = r1.converged && r2.converged;
  out.quad_err = std::fabs(scale) * (r1.error + r2.error);
  out.value = out.converged ? scale * (r1.value + r2.value) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double g_component(AlphaParam alpha, double x, const GVariantSpec& v) {
  require_open_half_unit(alpha, "g_component");
  if (!std::isfinite(x) || x < 0.0) throw std::domain_error("g_component: x must be finite and >= 0");
  const double a = alpha.value();
  const double theta = v.angle_parse == GVariantSpec::AngleParse::PI_OVER_2ALPHA ? pi / (2.0 * a) : 0.5 * pi * a;
  const double sigma = v.exp_sign == GVariantSpec::ExpSign::AS_PRINTED_NEGATIVE ? -1.0 : 1.0;
  const double prefactor = v.prefactor == GVariantSpec::Prefactor::TWO_OVER_ALPHA ? 2.0 / a : 1.0 / a;
  const double A = argument(a, x, v.arg_power);
  return prefactor * std::exp(sigma * A * std::cos(theta)) * std::cos(A * std::sin(theta));
}

std::vector<double> default_decomposition_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 55; ++i) grid.push_back(0.25 + 0.05 * i);
  return grid;
}

Reconciliation reconcile_decomposition(AlphaParam alpha, const std::vector<double>& x_grid, const QuadratureConfig& q,
                                       const EvalConfig& cfg) {
  require_open_half_unit(alpha, "reconcile_decomposition");
  q.validate();
  if (x_grid.empty()) throw std::invalid_argument("reconcile_decomposition: empty grid");
  for (double x : x_grid) {
    if (!(x >= 0.1 && x <= 3.0)) throw std::domain_error("reconcile_decomposition: grid must lie in [0.1, 3]");
  }
  const double a = alpha.value();
  const std::vector<GVariantSpec> variants = GVariantSpec::all();
  const double x_max = *std::max_element(x_grid.begin(), x_grid.end());
  const MittagLeffler doubled(AlphaParam(2.0 * a), std::pow(x_max, 2.0 * a) * (1.0 + 1e-12), cfg);

  struct PointData {
    std::array<FComponent, 4> f;
    SeriesEval series;
  };
  std::vector<PointData> points(x_grid.size());
  parallel_for(x_grid.size(), [&](std::size_t i) {
    const double x = x_grid[i];
    for (int p = 0; p < 2; ++p)
      for (int k = 0; k < 2; ++k) {
        const auto arg = static_cast<GVariantSpec::ArgPower>(p);
        const auto kernel = static_cast<GVariantSpec::KernelPower>(k);
        points[i].f[f_slot(arg, kernel)] = f_component(alpha, x, q, arg, kernel);
      }
    points[i].series = doubled.at_power({-1.0, 0.0}, x);
  });

  Reconciliation out;
  out.alpha = a;
  out.variants.resize(variants.size());
  for (std::size_t v = 0; v < variants.size(); ++v) out.variants[v].variant = variants[v];

  std::vector<std::vector<double>> residual(x_grid.size(), std::vector<double>(variants.size()));
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const double series = points[i].series.value.real();
    const SeriesEval& s = points[i].series;
    out.max_series_err = std::max(out.max_series_err, s.converged ? s.err_bound : std::numeric_limits<double>::infinity());
    for (const FComponent& f : points[i].f) {
      if (!f.converged) throw std::runtime_error("reconcile_decomposition: quadrature tolerance not met");
      out.max_quad_err = std::max(out.max_quad_err, f.quad_err);
    }
    for (std::size_t v = 0; v < variants.size(); ++v) {
      const FComponent& f = points[i].f[f_slot(variants[v].arg_power, variants[v].kernel_power)];
      const double r = std::fabs(f.value + g_component(alpha, x_grid[i], variants[v]) - series);
      residual[i][v] = r;
      VariantResidual& vr = out.variants[v];
      if (!(r <= vr.sup_residual)) {
        vr.sup_residual = r;
        vr.argmax_x = x_grid[i];
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t v = 1; v < variants.size(); ++v) {
    if (out.variants[v].sup_residual < out.variants[best].sup_residual) best = v;
  }
  out.best_variant = variants[best];
  out.best_sup = out.variants[best].sup_residual;
  out.literal_sup = out.variants[0].sup_residual;

  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    DecompositionRecord rec;
    rec.alpha = a;
    rec.x = x_grid[i];
    const FComponent& f = points[i].f[f_slot(out.best_variant.arg_power, out.best_variant.kernel_power)];
    rec.f_value = f.value;
    rec.f_err = f.quad_err;
    for (const GVariantSpec& v : variants) rec.g_values.push_back(g_component(alpha, x_grid[i], v));
    rec.series_value = points[i].series.value.real();
    rec.series_err = points[i].series.err_bound;
    rec.best_variant = out.best_variant;
    rec.best_residual = residual[i][best];
    rec.literal_residual = residual[i][0];
    out.records.push_back(std::move(rec));
  }

  if (!(out.best_sup <= 1e-4)) {
    throw std::runtime_error("reconcile_decomposition: no dialect reproduces the series within 1e-4 (best " +
                             std::to_string(out.best_sup) + ")");
  }
  return out;
}

}  // namespace mlfaudit
