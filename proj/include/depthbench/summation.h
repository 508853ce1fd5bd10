#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace depthbench {

// Neumaier-compensated running sum. Accumulation order is the call order, so
// the result is reproducible for a fixed input order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

// Compensated sum over the values in ascending order, so the result does not
// depend on the order the caller supplies them in.
inline double order_free_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return compensated_sum(values);
}

}  // namespace depthbench
