#include "fblfas/outage.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fblfas/codeword_stats.hpp"
#include "fblfas/errors.hpp"
#include "fblfas/fas_distribution.hpp"
#include "fblfas/text_format.hpp"

namespace fblfas {

std::string_view to_string(CorrelationMode m) { return m == CorrelationMode::mean ? "mean" : "max"; }

CorrelationMode correlation_mode_from_string(std::string_view name) {
  if (name == "mean") return CorrelationMode::mean;
  if (name == "max") return CorrelationMode::max;
  throw InvalidArgument("unknown correlation mode: " + std::string(name));
}

namespace {

void require_threshold(double gamma_th) {
  if (!(gamma_th > 0.0) || !std::isfinite(gamma_th)) {
    throw InvalidArgument("gamma_th must be finite and > 0");
  }
}

}  // namespace

void OutageQuery::validate() const {
  require_threshold(gamma_th);
  config.validate();
}

double interference_correlation(const SystemConfig& config, CorrelationMode mode) {
  if (config.n_users < 2) return 0.0;
  return mode == CorrelationMode::mean ? average_correlation(config.blocklength)
                                       : max_correlation(config.blocklength, config.n_users);
}

double sinr_lower_bound_fas(double g_amp_sq, const SystemConfig& config, double rho) {
  if (!(g_amp_sq >= 0.0)) throw InvalidArgument("g_amp_sq must be >= 0");
  if (g_amp_sq == 0.0) return 0.0;
  const double u = static_cast<double>(config.n_users);
  return 1.0 / ((u - 1.0) * (1.0 + u * rho) + config.noise_var / g_amp_sq);
}

std::optional<double> outage_threshold_radius(double gamma_th, const SystemConfig& config,
                                              double rho) {
  require_threshold(gamma_th);
  const double u = static_cast<double>(config.n_users);
  const double denom = 1.0 - (u - 1.0) * (u * rho + 1.0) * gamma_th;
  if (!(denom > 0.0)) return std::nullopt;
  return std::sqrt(config.noise_var * gamma_th / denom);
}

double outage_fas(const OutageQuery& query, const PortCorrelationProfile& profile,
                  const quad::QuadratureSpec& quad) {
  query.validate();
  const double rho = interference_correlation(query.config, query.correlation_mode);
  const auto r_th = outage_threshold_radius(query.gamma_th, query.config, rho);
  if (!r_th) return 1.0;
  return cdf_exact(*r_th, query.config, profile, quad);
}

double mrc_sinr_upper(std::size_t n_antennas, std::size_t n_users, double channel_var,
                      double noise_var) {
  if (n_antennas < 1) throw InvalidArgument("L must be >= 1");
  if (n_users < 1) throw InvalidArgument("U must be >= 1");
  if (!(channel_var > 0.0)) throw InvalidArgument("channel_var must be > 0");
  if (!(noise_var >= 0.0)) throw InvalidArgument("noise_var must be >= 0");
  const double l = static_cast<double>(n_antennas);
  const double u = static_cast<double>(n_users);
  return 4.0 * l * l * l * channel_var /
         (std::numbers::pi * (u - 1.0) * channel_var + 4.0 * l * l * noise_var);
}

double erlang_cdf(std::size_t shape, double x) {
  if (shape < 1) throw InvalidArgument("shape must be >= 1");
  if (std::isnan(x)) throw InvalidArgument("x must not be NaN");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double l = static_cast<double>(shape);
  if (x < l) {
    // Tail of the Poisson sum: e^{-x} sum_{k>=L} x^k / k!, terms shrink
    // geometrically since x < L.
    double term = std::exp(-x + l * std::log(x) - std::lgamma(l + 1.0));
    double sum = 0.0;
    for (std::size_t k = shape; k < shape + 100000; ++k) {
      sum += term;
      term *= x / static_cast<double>(k + 1);
      if (term < 1e-17 * sum) break;
    }
    return std::min(sum, 1.0);
  }
  double term = std::exp(-x);
  double head = 0.0;
  for (std::size_t k = 0; k < shape; ++k) {
    head += term;
    term *= x / static_cast<double>(k + 1);
  }
  return std::max(0.0, 1.0 - head);
}

double outage_mrc(double gamma_th, std::size_t n_antennas, std::size_t n_users,
                  double channel_var, double noise_var) {
  require_threshold(gamma_th);
  const double gamma = mrc_sinr_upper(n_antennas, n_users, channel_var, noise_var);
  if (std::isinf(gamma)) return 0.0;
  return erlang_cdf(n_antennas, gamma_th / gamma);
}

std::string to_csv(std::span<const OutagePoint> points) {
  std::ostringstream os;
  os << "x_axis,x_value,series,value\n";
  for (const auto& p : points) {
    os << p.x_axis << ',' << format_double(p.x_value) << ',' << p.series << ','
       << format_double(p.value) << '\n';
  }
  return os.str();
}

}  // namespace fblfas
