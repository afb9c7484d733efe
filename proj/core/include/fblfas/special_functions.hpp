#pragma once

#include <cstdint>

namespace fblfas::special {

/// Euler-Mascheroni constant at full double precision.
inline constexpr double kEulerGamma = 0.5772156649015329;

/// Accuracy targets for the iterative special functions.
struct AccuracyBudget {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_terms = 10'000;

  void validate() const;
};

/// Zero-order Bessel function of the first kind. Absolute error below 1e-12
/// for |x| <= 1e4.
double bessel_j0(double x);

/// Zero-order modified Bessel function of the first kind. Overflows to +inf
/// beyond x ~ 713; use bessel_i0_scaled inside products.
double bessel_i0(double x);

/// e^{-x} I0(x) for x >= 0. In (0, 1] and non-increasing; finite for any
/// finite x.
double bessel_i0_scaled(double x);

/// First-order Marcum Q-function Q1(a, b) for a, b >= 0.
///
/// Uses a Poisson-mixture series (all terms positive) while a*b < 30, and a
/// trigonometric integral representation evaluated by adaptive quadrature
/// otherwise. The series path computes whichever of Q1 and 1 - Q1 is the
/// smaller tail directly.
double marcum_q1(double a, double b, const AccuracyBudget& budget = {});

/// 1 - Q1(a, b), i.e. the Rician CDF P(R <= b) for noncentrality a. Keeps
/// relative accuracy when the value is tiny (small b) on the series path.
double marcum_q1_complement(double a, double b, const AccuracyBudget& budget = {});

/// Gaussian tail probability Q(x) = P(Z > x).
double gauss_q(double x);

/// ln C(n, k).
double log_binomial(std::uint64_t n, std::uint64_t k);

}  // namespace fblfas::special
