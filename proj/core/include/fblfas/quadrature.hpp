#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>

#include "fblfas/errors.hpp"

namespace fblfas::quad {

/// Tolerances for the adaptive Gauss-Kronrod (7/15) subdivision rule.
struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_depth = 40;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_depth < 1) {
      throw InvalidArgument("QuadratureSpec: tolerances must be > 0 and max_depth >= 1");
    }
  }
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes on [0,1]; index 0 is the centre. Odd-indexed
// Kronrod nodes coincide with the Gauss nodes.
inline constexpr std::array<double, 8> kNodes = {
    0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144845693013,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};
inline constexpr std::array<double, 8> kKronrod = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};
inline constexpr std::array<double, 4> kGauss = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

struct Panel {
  double kronrod;
  double error;
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double k15 = kKronrod[0] * fc;
  double g7 = kGauss[0] * fc;
  std::array<double, 15> values{};
  values[0] = fc;
  for (std::size_t j = 1; j < kNodes.size(); ++j) {
    const double dx = half * kNodes[j];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    values[2 * j - 1] = f1;
    values[2 * j] = f2;
    k15 += kKronrod[j] * (f1 + f2);
    if (j % 2 == 0) g7 += kGauss[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * k15;
  double resasc = kKronrod[0] * std::abs(fc - mean);
  for (std::size_t j = 1; j < kNodes.size(); ++j) {
    resasc += kKronrod[j] * (std::abs(values[2 * j - 1] - mean) + std::abs(values[2 * j] - mean));
  }
  resasc *= std::abs(half);
  double err = std::abs((k15 - g7) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  return {k15 * half, err};
}

template <class F>
void refine(F& f, double a, double b, Panel whole, double tol_density, int depth,
            const QuadratureSpec& spec, QuadResult& out) {
  const double width = std::abs(b - a);
  if (whole.error <= tol_density * width || depth >= spec.max_depth) {
    if (whole.error > tol_density * width) out.converged = false;
    out.value += whole.kronrod;
    out.abs_error += whole.error;
    return;
  }
  const double mid = 0.5 * (a + b);
  const Panel left = gauss_kronrod_15(f, a, mid);
  const Panel right = gauss_kronrod_15(f, mid, b);
  out.evaluations += 30;
  // Roundoff floor: the refined estimate agrees with its parent to machine
  // precision, so further bisection cannot reduce the error.
  const double refined = left.kronrod + right.kronrod;
  if (std::abs(refined - whole.kronrod) <=
      64.0 * std::numeric_limits<double>::epsilon() * std::abs(refined)) {
    out.value += refined;
    out.abs_error += std::min(left.error + right.error,
                              std::abs(refined - whole.kronrod) +
                                  std::numeric_limits<double>::epsilon() * std::abs(refined));
    return;
  }
  refine(f, a, mid, left, tol_density, depth + 1, spec, out);
  refine(f, mid, b, right, tol_density, depth + 1, spec, out);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of `f` over [a, b].
///
/// Panels are bisected until each meets its share of the global tolerance
/// max(abs_tol, rel_tol * |I|), where |I| is estimated from the first pass.
/// Never throws; inspect `converged`.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  QuadResult out;
  out.value = 0.0;
  if (a == b) return out;
  const detail::Panel first = detail::gauss_kronrod_15(f, a, b);
  out.evaluations = 15;
  const double scale = std::max(spec.abs_tol, spec.rel_tol * std::abs(first.kronrod));
  const double tol_density = scale / std::abs(b - a);
  detail::refine(f, a, b, first, tol_density, 0, spec, out);
  const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
  if (out.abs_error > 4.0 * target) out.converged = false;
  return out;
}

/// As `integrate`, throwing NumericFailure when the tolerance is not met.
template <class F>
double integrate_or_throw(F&& f, double a, double b, const QuadratureSpec& spec,
                          const char* context) {
  const QuadResult r = integrate(f, a, b, spec);
  if (!r.converged) {
    std::ostringstream msg;
    msg << context << ": quadrature did not converge on [" << a << ", " << b
        << "] (estimate " << r.value << ", error bound " << r.abs_error << ")";
    throw NumericFailure(msg.str(), r.value, r.abs_error);
  }
  return r.value;
}

}  // namespace fblfas::quad
