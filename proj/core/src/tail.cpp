#include "madstat/tail.hpp"

#include <cmath>

#include "madstat/error.hpp"

namespace madstat {

void TailModel::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("tail index alpha must be positive");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("tail balance p must lie in [0, 1]");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("tail scale must be positive");
  }
}

double TailModel::survival(double x) const {
  const double t = x / scale;
  if (t <= 1.0) return 1.0;
  const double power = std::pow(t, -alpha);
  switch (slow) {
    case SlowVariation::constant:
      return power;
    case SlowVariation::log:
      return power * (1.0 + std::log(t));
  }
  return power;
}

}  // namespace madstat
