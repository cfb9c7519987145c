#include "mlfaudit/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mlfaudit/format.hpp"
#include "mlfaudit/mittag_leffler.hpp"
#include "mlfaudit/parallel.hpp"

namespace mlfaudit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_alphas(const std::vector<double>& alphas) {
  if (alphas.empty()) throw std::invalid_argument("figure: no alpha values");
}

std::vector<double> axis_points(const GridAxis& axis) {
  std::vector<double> xs(axis.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = axis.at(i);
  return xs;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

// blue (negative) - white - red (positive)
std::string diverging(double t) {
  t = std::clamp(t, -1.0, 1.0);
  int r = 255, g = 255, b = 255;
  if (t < 0) {
    r = g = static_cast<int>(std::lround(255 * (1 + t)));
  } else {
    g = b = static_cast<int>(std::lround(255 * (1 - t)));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string alpha_label(const std::string& prefix, double alpha) { return prefix + "_alpha=" + shortest(alpha); }

Table fig1_table(const std::vector<double>& alphas, const GridAxis& x_axis, const EvalConfig& cfg) {
  require_alphas(alphas);
  const std::vector<double> xs = axis_points(x_axis);
  Table t;
  t.header.push_back("x");
  t.rows.assign(xs.size(), std::vector<double>(alphas.size() + 1));
  for (std::size_t i = 0; i < xs.size(); ++i) t.rows[i][0] = xs[i];
  for (std::size_t c = 0; c < alphas.size(); ++c) {
    const AlphaParam alpha(alphas[c]);
    if (alpha.value() > 1.0) throw std::domain_error("fig1: alpha must lie in (0, 1]");
    t.header.push_back(alpha_label("p", alphas[c]));
    const MittagLeffler ml(alpha, std::pow(xs.back(), alphas[c]) * (1.0 + 1e-12), cfg);
    parallel_for(xs.size(), [&](std::size_t i) {
      const FracTrigPair p = ml.trig(xs[i]);
      t.rows[i][c + 1] = p.converged ? p.cos_part * p.cos_part + p.sin_part * p.sin_part : kNaN;
    });
  }
  return t;
}

Table fig2_table(const std::vector<double>& alphas, const GridAxis& x_axis, const EvalConfig& cfg) {
  require_alphas(alphas);
  const std::vector<double> xs = axis_points(x_axis);
  Table t;
  t.header.push_back("x");
  t.rows.assign(xs.size(), std::vector<double>(alphas.size() + 1));
  for (std::size_t i = 0; i < xs.size(); ++i) t.rows[i][0] = xs[i];
  for (std::size_t c = 0; c < alphas.size(); ++c) {
    if (!(alphas[c] > 0.0 && alphas[c] <= 1.0)) throw std::domain_error("fig2: alpha must lie in (0, 1]");
    t.header.push_back(alpha_label("cos", alphas[c]));
    const MittagLeffler ml(AlphaParam(2.0 * alphas[c]), std::pow(xs.back(), 2.0 * alphas[c]) * (1.0 + 1e-12), cfg);
    parallel_for(xs.size(), [&](std::size_t i) {
      const SeriesEval e = ml.at_power({-1.0, 0.0}, xs[i]);
      t.rows[i][c + 1] = e.converged ? e.value.real() : kNaN;
    });
  }
  return t;
}

Table fig3_table(const std::vector<double>& alphas, ComplexValue lambda, const GridAxis& xy_axis,
                 const EvalConfig& cfg) {
  require_alphas(alphas);
  if (xy_axis.start != 0.0) throw std::invalid_argument("fig3: the grid must start at 0");
  Table t;
  t.header = {"alpha", "x", "y", "diff"};
  for (double a : alphas) {
    const ResidualGrid g = semigroup_residual_grid(AlphaParam(a), lambda, xy_axis.stop, xy_axis.step, cfg);
    const std::size_t n = g.axes[0].size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t at = i * n + j;
        const double v = std::isfinite(g.point_err[at]) ? g.signed_values[at] : kNaN;
        t.rows.push_back({a, g.axes[0].at(i), g.axes[1].at(j), v});
      }
    }
  }
  return t;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += table.header[c];
  }
  out += '\n';
  for (const std::vector<double>& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += shortest(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string line_svg(const Table& table, const std::string& title, const std::string& x_label,
                     const std::string& y_label) {
  if (table.rows.empty() || table.header.size() < 2) throw std::invalid_argument("line_svg: empty table");
  constexpr double W = 720, H = 420, L = 70, R = 170, T = 40, B = 55;
  double x0 = table.rows.front()[0], x1 = table.rows.back()[0];
  double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
  for (const auto& row : table.rows)
    for (std::size_t c = 1; c < row.size(); ++c)
      if (std::isfinite(row[c])) {
        y0 = std::min(y0, row[c]);
        y1 = std::max(y1, row[c]);
      }
  if (!(y0 < y1)) {
    y0 = std::isfinite(y0) ? y0 - 1 : 0;
    y1 = y0 + 2;
  }
  if (!(x0 < x1)) x1 = x0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape_xml(title)
     << "</text>\n"
     << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = x0 + (x1 - x0) * k / 5.0;
    const double yv = y0 + (y1 - y0) * k / 5.0;
    os << "<text x=\"" << fixed(px(xv)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
       << fixed(xv, 2) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << fixed(py(yv) + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
       << fixed(yv, 3) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << escape_xml(x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
     << (T + H - B) / 2 << ")\">" << escape_xml(y_label) << "</text>\n";

  for (std::size_t c = 1; c < table.header.size(); ++c) {
    const char* color = kPalette[(c - 1) % (sizeof kPalette / sizeof kPalette[0])];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& row : table.rows) {
      if (!std::isfinite(row[c])) continue;
      if (!first) os << ' ';
      os << fixed(px(row[0])) << ',' << fixed(py(row[c]));
      first = false;
    }
    os << "\"/>\n";
    const double ly = T + 20.0 * static_cast<double>(c);
    os << "<line x1=\"" << W - R + 15 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 40 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - R + 46 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << escape_xml(table.header[c])
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string heatmap_svg(const Table& table, const std::string& title) {
  if (table.rows.empty() || table.header.size() != 4) throw std::invalid_argument("heatmap_svg: expected alpha,x,y,diff");
  std::map<double, std::vector<const std::vector<double>*>> panels;
  for (const auto& row : table.rows) panels[row[0]].push_back(&row);

  constexpr double P = 300, gap = 60, L = 50, T = 50;
  const double W = L + panels.size() * (P + gap);
  const double H = T + P + 60;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"16\">" << escape_xml(title)
     << "</text>\n";

  double left = L;
  for (const auto& [alpha, rows] : panels) {
    double x1 = 0, y1 = 0, scale = 0;
    for (const auto* r : rows) {
      x1 = std::max(x1, (*r)[1]);
      y1 = std::max(y1, (*r)[2]);
      if (std::isfinite((*r)[3])) scale = std::max(scale, std::fabs((*r)[3]));
    }
    if (x1 <= 0) x1 = 1;
    if (y1 <= 0) y1 = 1;
    if (scale == 0) scale = 1;
    const std::size_t n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(rows.size()))));
    const double cell = P / static_cast<double>(std::max<std::size_t>(n, 1));
    for (const auto* r : rows) {
      const double cx = left + (*r)[1] / x1 * (P - cell);
      const double cy = T + P - cell - (*r)[2] / y1 * (P - cell);
      const std::string fill = std::isfinite((*r)[3]) ? diverging((*r)[3] / scale) : "#888888";
      os << "<rect x=\"" << fixed(cx) << "\" y=\"" << fixed(cy) << "\" width=\"" << fixed(cell + 0.05)
         << "\" height=\"" << fixed(cell + 0.05) << "\" fill=\"" << fill << "\"/>\n";
    }
    os << "<rect x=\"" << left << "\" y=\"" << T << "\" width=\"" << P << "\" height=\"" << P
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left + P / 2 << "\" y=\"" << T + P + 20 << "\" text-anchor=\"middle\" font-size=\"12\">x (0 to "
       << fixed(x1) << "), alpha=" << shortest(alpha) << "</text>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << T + P / 2 << "\" text-anchor=\"end\" font-size=\"12\">y</text>\n";
    os << "<text x=\"" << left + P / 2 << "\" y=\"" << T + P + 40
       << "\" text-anchor=\"middle\" font-size=\"11\">colour range +/-" << shortest(scale) << "</text>\n";
    left += P + gap;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace mlfaudit
