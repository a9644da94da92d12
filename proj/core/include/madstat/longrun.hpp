#pragma once

#include <cstddef>
#include <optional>

#include "madstat/mad_core.hpp"

namespace madstat {

enum class LagKernel { bartlett, truncated };

struct LagWindowSpec {
  LagKernel kernel = LagKernel::bartlett;
  // nullopt selects floor(4 (n / 100)^(2/9)).
  std::optional<std::size_t> bandwidth;

  std::size_t resolve(std::size_t n) const;
};

std::size_t auto_bandwidth(std::size_t n) noexcept;
double lag_weight(LagKernel kernel, std::size_t lag, std::size_t bandwidth);

// Symmetric 2x2 matrix [[yy, yz], [yz, zz]].
struct Cov2 {
  double yy = 0.0;
  double zz = 0.0;
  double yz = 0.0;

  double min_eigenvalue() const noexcept;
  double max_eigenvalue() const noexcept;
};

// Gamma_0 + sum_{k=1}^{B} w_k (Gamma_k + Gamma_k^T) with biased (1/n)
// lag-k cross-covariances of the mean-removed pair.
Cov2 longrun_cov(const Series& y, const Series& z, const LagWindowSpec& spec);

}  // namespace madstat
