#include "mlfaudit/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlfaudit/decomposition.hpp"
#include "mlfaudit/figures.hpp"
#include "mlfaudit/format.hpp"
#include "mlfaudit/suite.hpp"

namespace mlfaudit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    if (!out) throw OutputError("failed to write to standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file.is_open()) throw UsageError("cannot open output path '" + path + "'");
  file << content;
  file.close();
  if (!file) throw OutputError("failed to write '" + path + "'");
}

EvalConfig make_config(const std::optional<double>& abs_tol, const std::optional<std::size_t>& max_terms,
                       const std::string& precision) {
  EvalConfig cfg;
  if (abs_tol) cfg.abs_tol = *abs_tol;
  if (max_terms) cfg.max_terms = *max_terms;
  if (precision == "double") cfg.precision = Precision::Double;
  else if (precision == "extended") cfg.precision = Precision::Extended;
  else if (precision != "auto") throw UsageError("--precision must be auto, double or extended");
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

struct Flags {
  std::string alpha, z, x, lambda, grid, window, xmax, step, abs_tol, tolerance, max_terms, quad_tol;
  std::string precision = "auto";
  std::string format;
  std::string out, svg;
  std::string check = "all";
  std::string which;
};

std::optional<double> optional_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_number(s);
}

int cmd_eval(const Flags& f, std::ostream& out) {
  if (f.alpha.empty()) throw UsageError("eval: --alpha is required");
  if (f.z.empty() == f.x.empty()) throw UsageError("eval: give exactly one of --z or --x");
  std::optional<std::size_t> max_terms;
  if (!f.max_terms.empty()) {
    const double v = parse_number(f.max_terms);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e7) throw UsageError("--max-terms must be a positive integer");
    max_terms = static_cast<std::size_t>(v);
  }
  const EvalConfig cfg = make_config(optional_number(f.abs_tol), max_terms, f.precision);
  const AlphaParam alpha(parse_number(f.alpha));

  std::ostringstream os;
  bool converged = false;
  if (!f.z.empty()) {
    const SeriesEval e = eval_mlf(alpha, parse_complex(f.z), cfg);
    os << "value: " << shortest(e.value.real());
    if (e.value.imag() != 0.0) os << (std::signbit(e.value.imag()) ? " - " : " + ") << shortest(std::fabs(e.value.imag())) << "i";
    os << "\nerr_bound: " << shortest(e.err_bound) << "\nterms: " << e.terms_used
       << "\nprecision: " << (e.extended ? "double-double" : "double") << "\nconverged: " << (e.converged ? "true" : "false")
       << "\n";
    converged = e.converged;
  } else {
    const double x = parse_number(f.x);
    const FracTrigPair t = frac_trig(alpha, x, cfg);
    os << "cos: " << shortest(t.cos_part) << "\nsin: " << shortest(t.sin_part) << "\ncos_err: " << shortest(t.cos_err)
       << "\nsin_err: " << shortest(t.sin_err) << "\n";
    converged = t.converged;
    if (std::pow(x, 2.0 * alpha.value()) <= kMaxArgument) {
      const SeriesEval d = cos_via_duplication(alpha, x, cfg);
      os << "cos_duplication: " << shortest(d.value.real()) << "\ncos_duplication_err: " << shortest(d.err_bound) << "\n";
      converged = converged && d.converged;
    }
    os << "converged: " << (converged ? "true" : "false") << "\n";
  }
  write_output(f.out, os.str(), out);
  return converged ? 0 : 2;
}

SuiteOptions suite_options(const Flags& f) {
  SuiteOptions o;
  if (!f.alpha.empty()) o.alphas = parse_number_list(f.alpha);
  if (!f.lambda.empty()) o.lambda = parse_complex(f.lambda);
  o.x_max = optional_number(f.xmax);
  o.step = optional_number(f.step);
  o.x = optional_number(f.x);
  o.abs_tol = optional_number(f.abs_tol);
  if (!f.tolerance.empty()) o.tolerance = parse_number(f.tolerance);
  if (!f.window.empty()) {
    const std::vector<std::string> parts = split(f.window, ':');
    if (parts.size() != 2) throw UsageError("--window expects lo:hi");
    o.m_min = parse_number(parts[0]);
    o.m_max = parse_number(parts[1]);
  }
  if (o.abs_tol && !(*o.abs_tol > 0.0)) throw UsageError("--abs-tol must be positive");
  if (!(o.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  return o;
}

std::string text_summary(const AuditReport& r) {
  std::ostringstream os;
  for (const Check& c : r.checks) {
    os << to_string(c.verdict) << "  " << c.name;
    for (const auto& [k, v] : c.params) {
      os << ' ' << k << '=';
      std::visit(
          [&](const auto& value) {
            using T = std::decay_t<decltype(value)>;
            if constexpr (std::is_same_v<T, double>) os << shortest(value);
            else os << value;
          },
          v);
    }
    os << "  sup=" << shortest(c.sup) << " err=" << shortest(c.err_bound) << " tol=" << shortest(c.tolerance) << "\n";
  }
  const auto count = [&](Verdict v) {
    return std::count_if(r.checks.begin(), r.checks.end(), [&](const Check& c) { return c.verdict == v; });
  };
  os << r.checks.size() << " checks: " << count(Verdict::CONFIRMS_PAPER) << " confirm, "
     << count(Verdict::CONTRADICTS_PAPER) << " contradict, " << count(Verdict::INCONCLUSIVE) << " inconclusive\n";
  return os.str();
}

int cmd_audit(const Flags& f, const std::string& default_format, std::ostream& out) {
  const SuiteOptions o = suite_options(f);
  const std::string format = f.format.empty() ? default_format : f.format;
  if (format != "text" && format != "json" && format != "md") throw UsageError("--format must be text, json or md");

  std::vector<Check> checks;
  if (f.check == "all") {
    checks = run_default_suite(o);
  } else {
    const auto& names = check_families();
    if (std::find(names.begin(), names.end(), f.check) == names.end()) {
      throw UsageError("unknown check '" + f.check + "'");
    }
    checks = run_family(f.check, o);
  }
  const AuditReport report = build_report(std::move(checks), utc_timestamp());
  const std::string body = format == "json" ? to_json(report) : format == "md" ? to_markdown(report) : text_summary(report);
  write_output(f.out, body, out);
  return report.all_confirm() ? 0 : 2;
}

int cmd_figure(const Flags& f, std::ostream& out) {
  const EvalConfig cfg = make_config(optional_number(f.abs_tol), std::nullopt, f.precision);
  Table table;
  std::string svg;
  if (f.which == "fig1") {
    const auto alphas = f.alpha.empty() ? std::vector<double>{0.25, 0.5, 0.75, 1.0} : parse_number_list(f.alpha);
    table = fig1_table(alphas, f.grid.empty() ? GridAxis{0.0, 6.0, 0.01} : parse_grid(f.grid), cfg);
    if (!f.svg.empty()) svg = line_svg(table, "E_a(i x^a) E_a(-i x^a)", "x", "p(x, alpha)");
  } else if (f.which == "fig2") {
    const auto alphas = f.alpha.empty() ? std::vector<double>{0.25, 0.5, 0.75, 1.0} : parse_number_list(f.alpha);
    table = fig2_table(alphas, f.grid.empty() ? GridAxis{0.01, 1.0, 0.01} : parse_grid(f.grid), cfg);
    if (!f.svg.empty()) svg = line_svg(table, "cos_a(x^a) = E_2a(-x^2a)", "x", "cos_alpha(x^alpha)");
  } else if (f.which == "fig3") {
    const auto alphas = f.alpha.empty() ? std::vector<double>{0.25, 0.75} : parse_number_list(f.alpha);
    const ComplexValue lambda = f.lambda.empty() ? ComplexValue{1.0, 0.0} : parse_complex(f.lambda);
    table = fig3_table(alphas, lambda, f.grid.empty() ? GridAxis{0.0, 2.0, 0.02} : parse_grid(f.grid), cfg);
    if (!f.svg.empty()) svg = heatmap_svg(table, "E_a(l(x+y)^a) - E_a(l x^a) E_a(l y^a)");
  } else {
    throw UsageError("figure must be fig1, fig2 or fig3");
  }
  write_output(f.out, to_csv(table), out);
  if (!f.svg.empty()) write_output(f.svg, svg, out);
  return 0;
}

int cmd_decompose(const Flags& f, std::ostream& out) {
  const auto alphas = f.alpha.empty() ? std::vector<double>{0.75} : parse_number_list(f.alpha);
  const std::vector<double> grid = f.grid.empty() ? default_decomposition_grid() : parse_number_list(f.grid);
  QuadratureConfig q;
  q.abs_tol = 1e-9;
  q.rel_tol = 1e-9;
  if (!f.quad_tol.empty()) q.abs_tol = q.rel_tol = parse_number(f.quad_tol);
  const EvalConfig cfg = make_config(optional_number(f.abs_tol), std::nullopt, f.precision);
  const std::string format = f.format.empty() ? "text" : f.format;
  if (format != "text" && format != "csv" && format != "json") throw UsageError("--format must be text, csv or json");

  std::ostringstream os;
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  if (format == "csv") os << "alpha,variant,sup_residual,argmax_x\n";
  bool ok = true;
  for (double a : alphas) {
    const Reconciliation r = reconcile_decomposition(AlphaParam(a), grid, q, cfg);
    ok = ok && r.best_sup + r.max_quad_err + r.max_series_err <= 1e-6;
    std::vector<VariantResidual> ranked = r.variants;
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const VariantResidual& l, const VariantResidual& r) { return l.sup_residual < r.sup_residual; });
    const FComponent lit0 = f_component(AlphaParam(a), 0.0, q, GVariantSpec::ArgPower::X_TO_2ALPHA,
                                        GVariantSpec::KernelPower::S_TO_2ALPHA);
    const FComponent std0 = f_component(AlphaParam(a), 0.0, q, GVariantSpec::ArgPower::X);
    if (format == "csv") {
      for (const VariantResidual& v : ranked) {
        os << shortest(a) << ",\"" << v.variant.to_string() << "\"," << shortest(v.sup_residual) << ','
           << shortest(v.argmax_x) << '\n';
      }
    } else if (format == "json") {
      nlohmann::ordered_json entry;
      entry["alpha"] = a;
      entry["best_variant"] = r.best_variant.to_string();
      entry["best_sup"] = r.best_sup;
      entry["literal_sup"] = r.literal_sup;
      entry["max_quad_err"] = r.max_quad_err;
      entry["max_series_err"] = std::isfinite(r.max_series_err) ? nlohmann::ordered_json(r.max_series_err) : nullptr;
      entry["f0_standard"] = std0.value;
      entry["f0_literal_kernel"] = lit0.value;
      entry["f0_printed"] = 1.0 - 2.0 / a;
      entry["g0_printed"] = 2.0 / a;
      entry["variants"] = nlohmann::ordered_json::array();
      for (const VariantResidual& v : ranked) {
        entry["variants"].push_back({{"variant", v.variant.to_string()}, {"sup", v.sup_residual}, {"argmax_x", v.argmax_x}});
      }
      doc.push_back(std::move(entry));
    } else {
      os << "alpha = " << shortest(a) << "\n"
         << "  best variant:   " << r.best_variant.to_string() << "  sup = " << shortest(r.best_sup) << "\n"
         << "  literal:        " << GVariantSpec::paper_literal().to_string() << "  sup = " << shortest(r.literal_sup)
         << "\n"
         << "  quadrature err: " << shortest(r.max_quad_err) << "   series err: " << shortest(r.max_series_err) << "\n"
         << "  f(0): standard kernel " << shortest(std0.value) << ", literal kernel " << shortest(lit0.value)
         << ", printed constant " << shortest(1.0 - 2.0 / a) << "\n";
      for (const VariantResidual& v : ranked) {
        os << "    " << v.variant.to_string() << "  " << shortest(v.sup_residual) << "\n";
      }
    }
  }
  if (format == "json") os << doc.dump(2) << "\n";
  write_output(f.out, os.str(), out);
  return ok ? 0 : 2;
}

}  // namespace

double parse_number(const std::string& text) {
  const std::string s = trim(text);
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw UsageError("malformed number '" + text + "'");
  }
  return value;
}

GridAxis parse_grid(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("grid '" + text + "' must be start:stop:step");
  GridAxis axis{parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
  if (!(axis.step > 0.0) || axis.start > axis.stop) throw UsageError("grid '" + text + "' needs start <= stop, step > 0");
  return axis;
}

std::vector<double> parse_number_list(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const GridAxis axis = parse_grid(text);
    std::vector<double> values(axis.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = axis.at(i);
    return values;
  }
  std::vector<double> values;
  for (const std::string& part : split(text, ',')) values.push_back(parse_number(part));
  return values;
}

ComplexValue parse_complex(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s += c;
  }
  if (s.empty()) throw UsageError("empty complex number");
  if (s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.find(',') != std::string::npos) {
    const std::vector<std::string> parts = split(s, ',');
    if (parts.size() != 2) throw UsageError("malformed complex number '" + text + "'");
    return {parse_number(parts[0]), parse_number(parts[1])};
  }
  if (s.back() != 'i') return {parse_number(s), 0.0};
  s.pop_back();
  // split before the last sign that is not an exponent sign
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  auto imag_of = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_number(t);
  };
  if (cut == std::string::npos) return {0.0, imag_of(s)};
  return {parse_number(s.substr(0, cut)), imag_of(s.substr(cut))};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mittag-Leffler evaluation and identity audit"};
  app.name("mlf-audit");
  app.require_subcommand(1);
  Flags f;

  auto* eval = app.add_subcommand("eval", "Evaluate E_alpha(z), or cos/sin_alpha(x^alpha) with --x");
  eval->add_option("--alpha", f.alpha, "order alpha in (0, 2]")->required();
  eval->add_option("--z", f.z, "complex argument, e.g. 1, -2.5, 1+2i");
  eval->add_option("--x", f.x, "real x >= 0 for the fractional trig pair");
  eval->add_option("--abs-tol", f.abs_tol, "absolute tolerance (default 1e-14)");
  eval->add_option("--max-terms", f.max_terms, "term budget (default 2000)");
  eval->add_option("--precision", f.precision, "auto, double or extended");
  eval->add_option("--out", f.out, "output file (default stdout)");

  auto add_audit_flags = [&](CLI::App* sub) {
    sub->add_option("--alpha", f.alpha, "alpha list: a,b,c or start:stop:step");
    sub->add_option("--lambda", f.lambda, "lambda for the semigroup check (default 1)");
    sub->add_option("--xmax", f.xmax, "upper end of the x grid");
    sub->add_option("--step", f.step, "grid step");
    sub->add_option("--x", f.x, "abscissa for point checks");
    sub->add_option("--window", f.window, "period search window lo:hi");
    sub->add_option("--abs-tol", f.abs_tol, "evaluator absolute tolerance");
    sub->add_option("--tolerance", f.tolerance, "identity tolerance (default 1e-10)");
    sub->add_option("--out", f.out, "output file (default stdout)");
  };
  auto* audit = app.add_subcommand("audit", "Run one check family or all of them");
  audit->add_option("check", f.check, "family name or 'all'");
  add_audit_flags(audit);
  audit->add_option("--format", f.format, "text, json or md");

  auto* report = app.add_subcommand("report", "Run the full suite and emit the report");
  add_audit_flags(report);
  report->add_option("--format", f.format, "json or md");

  auto* figure = app.add_subcommand("figure", "Write figure data as CSV (and optionally SVG)");
  figure->add_option("which", f.which, "fig1, fig2 or fig3")->required();
  figure->add_option("--alpha", f.alpha, "alpha list");
  figure->add_option("--grid", f.grid, "start:stop:step");
  figure->add_option("--lambda", f.lambda, "lambda for fig3 (default 1)");
  figure->add_option("--abs-tol", f.abs_tol, "evaluator absolute tolerance");
  figure->add_option("--out", f.out, "CSV path (default stdout)");
  figure->add_option("--svg", f.svg, "SVG path");

  auto* decompose = app.add_subcommand("decompose", "Reconcile the two-term decomposition dialects");
  decompose->add_option("--alpha", f.alpha, "alpha list in (1/2, 1) (default 0.75)");
  decompose->add_option("--grid", f.grid, "x values: list or start:stop:step (default 0.25:3:0.05)");
  decompose->add_option("--quad-tol", f.quad_tol, "quadrature tolerance (default 1e-9)");
  decompose->add_option("--abs-tol", f.abs_tol, "series absolute tolerance");
  decompose->add_option("--format", f.format, "text, csv or json");
  decompose->add_option("--out", f.out, "output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "mlf-audit: " << e.what() << "\n" << "run 'mlf-audit --help' for usage\n";
    return 1;
  }

  try {
    if (eval->parsed()) return cmd_eval(f, out);
    if (audit->parsed()) return cmd_audit(f, "text", out);
    if (report->parsed()) {
      if (!f.format.empty() && f.format != "json" && f.format != "md") throw UsageError("--format must be json or md");
      return cmd_audit(f, "json", out);
    }
    if (figure->parsed()) return cmd_figure(f, out);
    if (decompose->parsed()) return cmd_decompose(f, out);
  } catch (const UsageError& e) {
    err << "mlf-audit: " << e.what() << "\n";
    return 1;
  } catch (const OutputError& e) {
    err << "mlf-audit: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "mlf-audit: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "mlf-audit: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "mlf-audit: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace mlfaudit
