#pragma once

// Reference implementations used only by tests. They avoid the library's own
// series, quadrature engine and Bessel code.

#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

// Truncated power series sum_k (-1)^k (x/2)^{2k} / (k!)^2.
inline long double j0_series(long double x, int terms = 80) {
  long double term = 1.0L, sum = 1.0L;
  const long double q = x * x / 4.0L;
  for (int k = 1; k < terms; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    sum += term;
  }
  return sum;
}

inline long double i0_series(long double x) {
  long double term = 1.0L, sum = 1.0L;
  const long double q = x * x / 4.0L;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (term < 1e-21L * sum) break;
  }
  return sum;
}

template <class F>
double bisect(F f, double lo, double hi, int iters = 200) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <class F>
double integrate(F f, double a, double b, double tol = 1e-13) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 25, tol);
}

// Q1(a, b) = int_b^inf t exp(-(t^2 + a^2)/2) I0(a t) dt for moderate a t.
inline double marcum_q1_quadrature(double a, double b) {
  const double upper = std::max(a, b) + 40.0;
  if (b >= upper) return 0.0;
  auto rician = [a](double t) {
    return t * std::exp(-0.5 * (t - a) * (t - a) - a * t) * std::cyl_bessel_i(0.0, a * t);
  };
  // Split at the mode so the peak sits on a panel boundary.
  if (a > b) return integrate(rician, b, a, 1e-14) + integrate(rician, a, upper, 1e-14);
  return integrate(rician, b, upper, 1e-14);
}

// Q1(a, b) = 1 - F_{ncx2(2, a^2)}(b^2).
inline double marcum_q1_ncx2(double a, double b) {
  if (a == 0.0) return std::exp(-0.5 * b * b);
  boost::math::non_central_chi_squared dist(2.0, a * a);
  // Boost's complement loses the tail when b < a; take 1 - cdf there.
  if (b < a) return 1.0 - boost::math::cdf(dist, b * b);
  return boost::math::cdf(boost::math::complement(dist, b * b));
}

inline double gauss_density(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

// ln C(n, k) as sum of ln((n - i) / (k - i)).
inline double log_binomial_product(std::uint64_t n, std::uint64_t k) {
  double s = 0.0;
  for (std::uint64_t i = 0; i < k; ++i) {
    s += std::log(static_cast<double>(n - i) / static_cast<double>(k - i));
  }
  return s;
}

}  // namespace oracle
