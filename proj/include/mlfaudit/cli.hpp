#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlfaudit/identity_audit.hpp"

namespace mlfaudit {

/// Bad flag value or unusable path (exit code 1).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Output could not be written after it was opened (exit code 2).
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict decimal parse of the whole string.
double parse_number(const std::string& text);

/// "a,b,c" or "start:stop:step".
std::vector<double> parse_number_list(const std::string& text);

/// "start:stop:step".
GridAxis parse_grid(const std::string& text);

/// "1", "-2.5", "i", "-i", "0.5i", "1+2i", "1-0.5i", "(1,2)" or "1,2".
ComplexValue parse_complex(const std::string& text);

/// Runs the mlf-audit command line (args exclude the program name).
/// Returns 0 on success, 1 on usage errors, 2 when a check is inconclusive,
/// a tolerance is unmet or output fails.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlfaudit
