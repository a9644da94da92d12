#include "madstat/longrun.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "madstat/error.hpp"

namespace madstat {

std::size_t auto_bandwidth(std::size_t n) noexcept {
  return static_cast<std::size_t>(
      std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

std::size_t LagWindowSpec::resolve(std::size_t n) const {
  return bandwidth ? *bandwidth : auto_bandwidth(n);
}

double lag_weight(LagKernel kernel, std::size_t lag, std::size_t bandwidth) {
  if (lag > bandwidth) return 0.0;
  switch (kernel) {
    case LagKernel::bartlett:
      return 1.0 - static_cast<double>(lag) / static_cast<double>(bandwidth + 1);
    case LagKernel::truncated:
      return 1.0;
  }
  return 0.0;
}

double Cov2::min_eigenvalue() const noexcept {
  const double half_trace = 0.5 * (yy + zz);
  const double half_gap = 0.5 * (yy - zz);
  return half_trace - std::hypot(half_gap, yz);
}

double Cov2::max_eigenvalue() const noexcept {
  const double half_trace = 0.5 * (yy + zz);
  const double half_gap = 0.5 * (yy - zz);
  return half_trace + std::hypot(half_gap, yz);
}

Cov2 longrun_cov(const Series& y, const Series& z, const LagWindowSpec& spec) {
  const std::size_t n = y.size();
  if (z.size() != n) {
    throw DomainError("paired series differ in length (" + std::to_string(n) +
                      " vs " + std::to_string(z.size()) + ")");
  }
  const std::size_t bandwidth = spec.resolve(n);
  if (bandwidth >= n) {
    throw ConfigError("bandwidth " + std::to_string(bandwidth) +
                      " must be smaller than the series length " + std::to_string(n));
  }
  if (n < 2 * (bandwidth + 1)) {
    throw ConfigError("series length " + std::to_string(n) +
                      " is below 2 * (bandwidth + 1) for bandwidth " +
                      std::to_string(bandwidth));
  }

  const double my = mean(y);
  const double mz = mean(z);
  std::vector<double> cy(n);
  std::vector<double> cz(n);
  for (std::size_t i = 0; i < n; ++i) {
    cy[i] = y[i] - my;
    cz[i] = z[i] - mz;
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  Cov2 out;
  for (std::size_t lag = 0; lag <= bandwidth; ++lag) {
    CompensatedSum yy;
    CompensatedSum zz;
    CompensatedSum yz;  // y_{t+lag} z_t
    CompensatedSum zy;  // z_{t+lag} y_t
    for (std::size_t t = 0; t + lag < n; ++t) {
      yy.add(cy[t + lag] * cy[t]);
      zz.add(cz[t + lag] * cz[t]);
      yz.add(cy[t + lag] * cz[t]);
      zy.add(cz[t + lag] * cy[t]);
    }
    if (lag == 0) {
      out.yy = yy.value() * inv_n;
      out.zz = zz.value() * inv_n;
      out.yz = yz.value() * inv_n;
      continue;
    }
    const double w = lag_weight(spec.kernel, lag, bandwidth) * inv_n;
    out.yy += 2.0 * w * yy.value();
    out.zz += 2.0 * w * zz.value();
    out.yz += w * (yz.value() + zy.value());
  }
  return out;
}

}  // namespace madstat
