#pragma once

#include <cmath>

namespace adhesion1d {

// Neumaier compensated accumulator; keeps long mass/momentum sums accurate to
// a few ulps independently of the term count.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double get() const { return sum + comp; }
};

}  // namespace adhesion1d
