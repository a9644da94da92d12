#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "madstat/mad_core.hpp"

namespace madstat {

struct QuantileRow {
  double level;
  double sample_q;
  double reference_q;
  double abs_gap;
};

struct GofReport {
  double ks_distance = 0.0;
  std::vector<QuantileRow> quantile_table;
  std::size_t n_sample = 0;
  std::size_t n_reference = 0;
};

// sup_x |F_a(x) - F_b(x)| by a merged sweep over the sorted samples.
double ks_two_sample(const Series& a, const Series& b);

// Linear interpolation between order statistics (R type 7) on sorted data.
double quantile_sorted(std::span<const double> sorted, double level);
double quantile(const Series& s, double level);

GofReport quantile_band(const Series& sample, const Series& reference,
                        std::span<const double> levels);

}  // namespace madstat
