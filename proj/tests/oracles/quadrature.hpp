#pragma once

// Test-only oracles: expected values computed by numerical integration,
// independent of the closed forms inside the library.

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace madstat::oracle {

inline double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// Integral over the whole real line of f.
template <class F>
double integrate_real_line(F f) {
  boost::math::quadrature::exp_sinh<double> half;
  const double right = half.integrate([&](double x) { return f(x); }, 0.0,
                                      std::numeric_limits<double>::infinity());
  const double left = half.integrate([&](double x) { return f(-x); }, 0.0,
                                     std::numeric_limits<double>::infinity());
  return right + left;
}

// Integral of f over [a, inf).
template <class F>
double integrate_from(F f, double a) {
  boost::math::quadrature::exp_sinh<double> half;
  return half.integrate([&](double x) { return f(x); }, a,
                        std::numeric_limits<double>::infinity());
}

template <class F>
double integrate(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

}  // namespace madstat::oracle
