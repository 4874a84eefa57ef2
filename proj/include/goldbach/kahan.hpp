#pragma once

namespace goldbach {

// Compensated (Kahan) accumulator. Tracks the rounding error of each
// addition and reintroduces it in the next, keeping long sums accurate
// to a few ulp independent of term count.
struct KahanSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

}  // namespace goldbach
