#pragma once

#include <cmath>

namespace mlfaudit {

/// Neumaier's variant of Kahan summation.
///
/// The running compensation captures the low-order bits lost by each
/// addition, including the case where the incoming term is larger in
/// magnitude than the partial sum (which plain Kahan mishandles). For an
/// n-term sum the error is at most 2u|S| + O(n u^2) sum |t_i|.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double value) {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace mlfaudit
