#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "fblfas/channel_model.hpp"
#include "fblfas/quadrature.hpp"

namespace fblfas {

/// Which codeword-correlation statistic stands in for the interference.
enum class CorrelationMode { mean, max };

std::string_view to_string(CorrelationMode m);
CorrelationMode correlation_mode_from_string(std::string_view name);

struct OutageQuery {
  double gamma_th = 1e-3;  // linear SINR threshold
  SystemConfig config;
  CorrelationMode correlation_mode = CorrelationMode::mean;

  void validate() const;
};

/// rho_bar or rho_max for the config's (M, U). U = 1 gives 0 (no interferers).
/// Max mode with U = 2 raises DomainError (a single pair has no Gumbel scale).
double interference_correlation(const SystemConfig& config, CorrelationMode mode);

/// 1 / ((U - 1)(1 + U rho) + sigma_eta^2 / g^2); 0 when g^2 = 0.
double sinr_lower_bound_fas(double g_amp_sq, const SystemConfig& config, double rho);

/// sqrt(sigma_eta^2 gamma / (1 - (U - 1)(U rho + 1) gamma)), or nullopt when
/// the denominator is <= 0 (threshold above the interference ceiling).
std::optional<double> outage_threshold_radius(double gamma_th, const SystemConfig& config,
                                              double rho);

/// P(|g_FAS| <= r_th) via the exact CDF; 1 when r_th is infeasible.
double outage_fas(const OutageQuery& query, const PortCorrelationProfile& profile,
                  const quad::QuadratureSpec& quad = {});

/// 4 L^3 sigma^2 / (pi (U - 1) sigma^2 + 4 L^2 sigma_eta^2).
double mrc_sinr_upper(std::size_t n_antennas, std::size_t n_users, double channel_var,
                      double noise_var);

/// P(L, x), the regularized lower incomplete gamma for integer L, i.e.
/// 1 - e^{-x} sum_{k<L} x^k / k!. Accurate for small values.
double erlang_cdf(std::size_t shape, double x);

/// P(L, gamma_th / Gamma_MRC).
double outage_mrc(double gamma_th, std::size_t n_antennas, std::size_t n_users,
                  double channel_var, double noise_var);

struct OutagePoint {
  std::string x_axis;  // snr_db | n_ports | n_users
  double x_value = 0.0;
  std::string series;
  double value = 0.0;
};

/// Header x_axis,x_value,series,value.
std::string to_csv(std::span<const OutagePoint> points);

}  // namespace fblfas
