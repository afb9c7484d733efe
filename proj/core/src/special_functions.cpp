#include "fblfas/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fblfas/errors.hpp"
#include "fblfas/quadrature.hpp"

namespace fblfas::special {

namespace {

void require_finite(double x, const char* fn) {
  if (!std::isfinite(x)) {
    throw InvalidArgument(std::string(fn) + ": argument must be finite");
  }
}

// Below this |x| the J0 power series is summed in long double; the largest
// term is ~e^x / (pi x), so cancellation stays under 1e-13 absolute.
constexpr double kJ0SeriesLimit = 17.0;
// Below this x the I0 series (positive terms) is used; above, the scaled
// asymptotic expansion whose smallest term is ~e^{-2x}.
constexpr double kI0SeriesLimit = 30.0;
// Product a*b at which Marcum Q1 switches from series to quadrature.
constexpr double kMarcumSeriesLimit = 30.0;
// Beyond this separation Q1 is 0 or 1 to below the double underflow limit.
constexpr double kMarcumSaturation = 40.0;

double j0_series(double x) {
  const long double q = static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-22L) break;
  }
  return static_cast<double>(sum);
}

// Hankel expansion J0(x) ~ sqrt(2/(pi x)) (P cos w - Q sin w), w = x - pi/4,
// with c_k = prod_{j<=k} (2j-1)^2 / (k! 8^k).
double j0_asymptotic(double x) {
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd / (8.0 * k * x);
    if (term >= prev || term < 1e-18) break;
    prev = term;
    switch (k % 4) {
      case 1: q -= term; break;
      case 2: p -= term; break;
      case 3: q += term; break;
      case 0: p += term; break;
    }
  }
  const double c = std::cos(x);
  const double s = std::sin(x);
  const double cos_w = (c + s) * std::numbers::sqrt2 * 0.5;
  const double sin_w = (s - c) * std::numbers::sqrt2 * 0.5;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_w - q * sin_w);
}

double i0_series(double x) {
  const double q = x * x / 4.0;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

double i0_scaled_asymptotic(double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd / (8.0 * k * x);
    if (next >= term || next < 1e-17 * sum) break;
    term = next;
    sum += term;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

struct MarcumPair {
  double q;  // Q1(a, b)
  double p;  // 1 - Q1(a, b)
};

// Q1 = P(N_y <= N_l) with N_l ~ Poisson(a^2/2), N_y ~ Poisson(b^2/2). For
// a < b sum Q1 = sum_k Pois(k; l) * P(N_y <= k); otherwise sum the
// complement 1 - Q1 = sum_j Pois(j; y) * P(N_l <= j - 1).
double poisson_mixture_tail(double outer_mean, double inner_mean, bool shift,
                            const AccuracyBudget& budget) {
  double outer = std::exp(-outer_mean);  // Pois(k; outer_mean)
  double inner_pmf = std::exp(-inner_mean);
  // P(N_inner <= k) when !shift, P(N_inner <= k - 1) when shift.
  double inner_cdf = shift ? 0.0 : inner_pmf;
  double sum = 0.0;
  const double product = 2.0 * std::sqrt(outer_mean * inner_mean);
  const int k_min = static_cast<int>(std::ceil(outer_mean + product)) + 1;
  for (int k = 0; k < budget.max_terms; ++k) {
    if (k > 0) {
      outer *= outer_mean / k;
      if (shift) {
        inner_cdf += inner_pmf;
        inner_pmf *= inner_mean / k;
      } else {
        inner_pmf *= inner_mean / k;
        inner_cdf += inner_pmf;
      }
    }
    const double term = outer * inner_cdf;
    sum += term;
    if (k >= k_min) {
      const double ratio = outer_mean / (k + 1.0) * (1.0 + inner_mean / k);
      if (ratio < 1.0) {
        const double tail = term * ratio / (1.0 - ratio);
        if (tail <= 1e-17 * sum || (sum == 0.0 && outer == 0.0)) break;
      }
    }
  }
  return std::min(sum, 1.0);
}

MarcumPair marcum_series(double a, double b, const AccuracyBudget& budget) {
  const double lambda = 0.5 * a * a;
  const double y = 0.5 * b * b;
  if (a < b) {
    const double q = poisson_mixture_tail(lambda, y, false, budget);
    return {q, 1.0 - q};
  }
  const double p = poisson_mixture_tail(y, lambda, true, budget);
  return {1.0 - p, p};
}

// Trigonometric representation with phi folded onto [0, pi]. With
// d = 1 - zeta the integrand has a Lorentzian spike of width ~d at phi = 0
// (carrying half the mass as d -> 0) on top of a bump of width ~1/sqrt(ab).
MarcumPair marcum_integral(double a, double b, const AccuracyBudget& budget) {
  if (a == b) {
    const double q = 0.5 * (1.0 + bessel_i0_scaled(a * a));
    return {q, 1.0 - q};
  }
  const bool b_larger = b > a;
  const double big = b_larger ? b : a;
  const double small = b_larger ? a : b;
  const double d = (big - small) / big;
  const double zeta = small / big;
  const double half_big_sq = 0.5 * big * big;
  auto integrand = [&](double phi) {
    const double s = std::sin(0.5 * phi);
    const double omc = 2.0 * s * s;  // 1 - cos(phi)
    const double denom = d * d + 2.0 * zeta * omc;
    const double numer = b_larger ? d + zeta * omc : zeta * (omc - d);
    return numer / denom * std::exp(-half_big_sq * denom);
  };
  quad::QuadratureSpec spec;
  spec.abs_tol = budget.abs_tol * 0.1;
  spec.rel_tol = budget.rel_tol * 0.1;
  spec.max_depth = 60;
  // Geometric breakpoints from the spike width up to the bump width, so the
  // spike's 1/phi^2 tail is resolved decade by decade.
  std::array<double, 24> cuts{};
  std::size_t n_cuts = 0;
  cuts[n_cuts++] = 0.0;
  const double bump = std::min(std::numbers::pi, 8.0 * std::max(d, 1.0 / std::sqrt(a * b)));
  for (double w = 20.0 * d; w < bump && n_cuts < cuts.size() - 2; w *= 10.0) cuts[n_cuts++] = w;
  cuts[n_cuts++] = bump;
  if (bump < std::numbers::pi) cuts[n_cuts++] = std::numbers::pi;
  double integral = 0.0;
  double error = 0.0;
  bool converged = true;
  for (std::size_t i = 0; i + 1 < n_cuts; ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    const quad::QuadResult r = quad::integrate(integrand, cuts[i], cuts[i + 1], spec);
    integral += r.value;
    error += r.abs_error;
    converged = converged && r.converged;
  }
  integral /= std::numbers::pi;
  if (!converged) {
    throw NumericFailure("marcum_q1: quadrature did not converge at a=" + std::to_string(a) +
                             ", b=" + std::to_string(b) + " (abs_tol " +
                             std::to_string(budget.abs_tol) + ")",
                         integral, error / std::numbers::pi);
  }
  if (b_larger) {
    const double q = std::clamp(integral, 0.0, 1.0);
    return {q, 1.0 - q};
  }
  const double p = std::clamp(-integral, 0.0, 1.0);
  return {1.0 - p, p};
}

MarcumPair marcum_pair(double a, double b, const AccuracyBudget& budget, const char* fn) {
  require_finite(a, fn);
  require_finite(b, fn);
  if (a < 0.0 || b < 0.0) {
    throw InvalidArgument(std::string(fn) + ": arguments must be non-negative");
  }
  if (b == 0.0) return {1.0, 0.0};
  if (a == 0.0) {
    const double half_b2 = 0.5 * b * b;
    return {std::exp(-half_b2), -std::expm1(-half_b2)};
  }
  if (b - a > kMarcumSaturation) return {0.0, 1.0};
  if (a - b > kMarcumSaturation) return {1.0, 0.0};
  if (a * b < kMarcumSeriesLimit) return marcum_series(a, b, budget);
  return marcum_integral(a, b, budget);
}

}  // namespace

void AccuracyBudget::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_terms < 1) {
    throw InvalidArgument("AccuracyBudget: tolerances must be > 0 and max_terms >= 1");
  }
}

double bessel_j0(double x) {
  require_finite(x, "bessel_j0");
  const double ax = std::abs(x);
  return ax <= kJ0SeriesLimit ? j0_series(ax) : j0_asymptotic(ax);
}

double bessel_i0_scaled(double x) {
  require_finite(x, "bessel_i0_scaled");
  if (x < 0.0) throw InvalidArgument("bessel_i0_scaled: argument must be >= 0");
  if (x <= kI0SeriesLimit) return std::exp(-x) * i0_series(x);
  return i0_scaled_asymptotic(x);
}

double bessel_i0(double x) {
  require_finite(x, "bessel_i0");
  const double ax = std::abs(x);
  if (ax <= kI0SeriesLimit) return i0_series(ax);
  return std::exp(ax) * i0_scaled_asymptotic(ax);
}

double marcum_q1(double a, double b, const AccuracyBudget& budget) {
  return marcum_pair(a, b, budget, "marcum_q1").q;
}

double marcum_q1_complement(double a, double b, const AccuracyBudget& budget) {
  return marcum_pair(a, b, budget, "marcum_q1_complement").p;
}

double gauss_q(double x) {
  if (std::isnan(x)) throw InvalidArgument("gauss_q: argument is NaN");
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw InvalidArgument("log_binomial: k must not exceed n");
  const std::uint64_t m = std::min(k, n - k);
  if (m == 0) return 0.0;
  if (m <= 100) {
    double sum = 0.0;
    for (std::uint64_t i = 0; i < m; ++i) {
      sum += std::log(static_cast<double>(n - i) / static_cast<double>(m - i));
    }
    return sum;
  }
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return std::lgamma(nd + 1.0) - std::lgamma(md + 1.0) - std::lgamma(nd - md + 1.0);
}

}  // namespace fblfas::special
