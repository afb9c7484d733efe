#include "fblfas/codeword_stats.hpp"

#include <cmath>
#include <numbers>

#include "fblfas/errors.hpp"
#include "fblfas/special_functions.hpp"

namespace fblfas {

std::string_view to_string(StatsSource s) {
  return s == StatsSource::analytic ? "analytic" : "empirical";
}

namespace {

void require_blocklength(std::size_t m) {
  if (m < 1) throw InvalidArgument("blocklength must be >= 1");
}

}  // namespace

std::size_t pair_count(std::size_t n_users) {
  return n_users < 2 ? 0 : n_users * (n_users - 1) / 2;
}

double average_correlation(std::size_t blocklength) {
  require_blocklength(blocklength);
  return std::sqrt(std::numbers::pi / (4.0 * static_cast<double>(blocklength)));
}

GumbelParams gumbel_params(std::size_t blocklength, std::size_t pairs) {
  require_blocklength(blocklength);
  if (pairs < 2) throw DomainError("Gumbel scale needs at least 2 codeword pairs (ln T > 0)");
  const double m = static_cast<double>(blocklength);
  const double ln_t = std::log(static_cast<double>(pairs));
  return {std::sqrt(ln_t / m), 1.0 / (2.0 * std::sqrt(m * ln_t))};
}

double max_correlation(std::size_t blocklength, std::size_t n_users) {
  if (n_users < 2) throw InvalidArgument("max correlation needs n_users >= 2");
  const GumbelParams g = gumbel_params(blocklength, pair_count(n_users));
  return g.location + special::kEulerGamma * g.scale;
}

CorrelationStats analytic_correlation_stats(std::size_t blocklength, std::size_t n_users) {
  CorrelationStats s;
  s.rho_bar = average_correlation(blocklength);
  s.rho_max = max_correlation(blocklength, n_users);
  s.pair_count = pair_count(n_users);
  s.source = StatsSource::analytic;
  return s;
}

double pair_correlation_pdf(double r, std::size_t blocklength, double codeword_var) {
  require_blocklength(blocklength);
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("r must be finite and >= 0");
  if (!(codeword_var > 0.0)) throw InvalidArgument("codeword_var must be > 0");
  const double s = static_cast<double>(blocklength) * codeword_var * codeword_var;
  return 2.0 * r / s * std::exp(-r * r / s);
}

double max_correlation_cdf(double x, std::size_t blocklength, std::size_t pairs) {
  require_blocklength(blocklength);
  if (std::isnan(x)) throw InvalidArgument("x must not be NaN");
  if (x <= 0.0) return pairs == 0 ? 1.0 : 0.0;
  const double tail = std::exp(-static_cast<double>(blocklength) * x * x);
  return std::exp(static_cast<double>(pairs) * std::log1p(-tail));
}

double max_correlation_quantile(double p, std::size_t blocklength, std::size_t pairs) {
  require_blocklength(blocklength);
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p must lie in (0, 1)");
  if (pairs == 0) throw InvalidArgument("pairs must be >= 1");
  // 1 - e^{-M x^2} = p^{1/T}
  const double tail = -std::expm1(std::log(p) / static_cast<double>(pairs));
  return std::sqrt(-std::log(tail) / static_cast<double>(blocklength));
}

namespace {

void require_scale(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("Gumbel scale must be > 0");
}

}  // namespace

double gumbel_cdf(double z, double location, double scale) {
  require_scale(scale);
  return std::exp(-std::exp(-(z - location) / scale));
}

double gumbel_pdf(double z, double location, double scale) {
  require_scale(scale);
  const double u = (z - location) / scale;
  return std::exp(-u - std::exp(-u)) / scale;
}

}  // namespace fblfas
