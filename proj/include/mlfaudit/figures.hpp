#pragma once

#include <string>
#include <vector>

#include "mlfaudit/identity_audit.hpp"

namespace mlfaudit {

/// Rectangular numeric table with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// x, then one column p(x, a) = cos_a(x^a)^2 + sin_a(x^a)^2 per alpha.
/// Uncertified points are written as nan.
Table fig1_table(const std::vector<double>& alphas, const GridAxis& x_axis, const EvalConfig& cfg = {});

/// x, then one column cos_a(x^a) = E_{2a}(-x^{2a}) per alpha.
Table fig2_table(const std::vector<double>& alphas, const GridAxis& x_axis, const EvalConfig& cfg = {});

/// Long format: alpha, x, y, diff with
/// diff = Re(E_a(l (x+y)^a) - E_a(l x^a) E_a(l y^a)).
Table fig3_table(const std::vector<double>& alphas, ComplexValue lambda, const GridAxis& xy_axis,
                 const EvalConfig& cfg = {});

/// Header row plus one line per row, values in shortest round-trip form.
std::string to_csv(const Table& table);

/// Line chart of columns 1.. against column 0.
std::string line_svg(const Table& table, const std::string& title, const std::string& x_label,
                     const std::string& y_label);

/// One heatmap panel per distinct alpha of a fig3_table.
std::string heatmap_svg(const Table& table, const std::string& title);

/// "alpha=0.25" style column label.
std::string alpha_label(const std::string& prefix, double alpha);

}  // namespace mlfaudit
