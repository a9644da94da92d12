#include "madstat/gof.hpp"

#include <algorithm>
#include <cmath>

#include "madstat/error.hpp"

namespace madstat {

namespace {

std::vector<double> sorted_copy(const Series& s) {
  std::vector<double> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

double ks_two_sample(const Series& a, const Series& b) {
  const std::vector<double> xs = sorted_copy(a);
  const std::vector<double> ys = sorted_copy(b);
  const double na = static_cast<double>(xs.size());
  const double nb = static_cast<double>(ys.size());

  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < xs.size() || j < ys.size()) {
    double x;
    if (i == xs.size()) {
      x = ys[j];
    } else if (j == ys.size()) {
      x = xs[i];
    } else {
      x = std::min(xs[i], ys[j]);
    }
    // Step both ECDFs past every copy of x before comparing.
    while (i < xs.size() && xs[i] == x) ++i;
    while (j < ys.size() && ys[j] == x) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return sup;
}

double quantile_sorted(std::span<const double> sorted, double level) {
  if (sorted.empty()) throw DomainError("quantile of an empty sample");
  if (!(level >= 0.0 && level <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * level;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile(const Series& s, double level) {
  const std::vector<double> v = sorted_copy(s);
  return quantile_sorted(v, level);
}

GofReport quantile_band(const Series& sample, const Series& reference,
                        std::span<const double> levels) {
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (!(levels[k] > 0.0 && levels[k] < 1.0)) {
      throw DomainError("quantile levels must lie in (0, 1)");
    }
    if (k > 0 && !(levels[k] > levels[k - 1])) {
      throw DomainError("quantile levels must be strictly increasing");
    }
  }
  const std::vector<double> xs = sorted_copy(sample);
  const std::vector<double> ys = sorted_copy(reference);

  GofReport report;
  report.ks_distance = ks_two_sample(sample, reference);
  report.n_sample = xs.size();
  report.n_reference = ys.size();
  report.quantile_table.reserve(levels.size());
  for (double level : levels) {
    const double qs = quantile_sorted(xs, level);
    const double qr = quantile_sorted(ys, level);
    report.quantile_table.push_back({level, qs, qr, std::abs(qs - qr)});
  }
  return report;
}

}  // namespace madstat
