#pragma once

#include <cmath>

namespace calib::kernels::detail {

// Neumaier's variant of Kahan summation: running sum plus a compensation
// term that captures the rounding error of every add. Adding an exact zero
// leaves both terms bit-unchanged.
struct Neumaier {
  double s = 0.0;
  double c = 0.0;

  void add(double x) noexcept {
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }

  double value() const noexcept { return s + c; }
};

}  // namespace calib::kernels::detail
