#pragma once

namespace madstat {

enum class SlowVariation {
  constant,  // L(x) = 1
  log,       // L(x) = 1 + log(x / scale)
};

// Regularly varying two-sided tail:
//   Pr[X > x]  = p       (x / scale)^-alpha L(x)
//   Pr[X < -x] = (1 - p) (x / scale)^-alpha L(x)     for x >= scale,
// and Pr[|X| > x] = 1 below the scale.
struct TailModel {
  double alpha = 1.5;
  double p = 0.5;
  double scale = 1.0;
  SlowVariation slow = SlowVariation::constant;

  void validate() const;
  // Pr[|X| > x].
  double survival(double x) const;
};

}  // namespace madstat
