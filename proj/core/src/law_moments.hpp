#pragma once

#include <optional>

#include "madstat/generators.hpp"

namespace madstat::detail {

// Var(X - mu), Var|X - mu|, Cov(X - mu, |X - mu|) for iid laws with a closed
// form and finite variance.
struct PairMoments {
  double var_y;
  double var_z;
  double cov_yz;
};

std::optional<PairMoments> pair_moments(const GeneratorSpec& gen);

}  // namespace madstat::detail
