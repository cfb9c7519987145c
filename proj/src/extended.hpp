#pragma once

// Private to the library: wide-precision scalar used to build coefficient
// tables and series arguments before they are rounded to double-double.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mlfaudit/double_double.hpp"

namespace mlfaudit::detail {

using Extended = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                               boost::multiprecision::et_off>;

inline DoubleDouble to_double_double(const Extended& x) {
  const double hi = static_cast<double>(x);
  const double lo = static_cast<double>(Extended(x - hi));
  return detail::quick_two_sum(hi, lo);
}

}  // namespace mlfaudit::detail
