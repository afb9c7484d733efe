#pragma once

#include <cstddef>
#include <string_view>

namespace fblfas {

enum class StatsSource { analytic, empirical };

std::string_view to_string(StatsSource s);

struct CorrelationStats {
  double rho_bar = 0.0;
  double rho_max = 0.0;
  std::size_t pair_count = 0;
  StatsSource source = StatsSource::analytic;
};

/// Gumbel parameters used for the maximum correlation: location sqrt(ln T / M)
/// and scale 1 / (2 sqrt(M ln T)).
struct GumbelParams {
  double location;
  double scale;
};

/// T = U (U - 1) / 2.
std::size_t pair_count(std::size_t n_users);

/// sqrt(pi / (4 M)). Independent of U.
double average_correlation(std::size_t blocklength);

/// sqrt(ln T / M) + gamma / (2 sqrt(M ln T)).
/// U < 2 raises InvalidArgument, T < 2 raises DomainError.
double max_correlation(std::size_t blocklength, std::size_t n_users);

CorrelationStats analytic_correlation_stats(std::size_t blocklength, std::size_t n_users);

/// Rayleigh density of |c_i^H c_j| for CN(0, sigma_c^2) codewords:
/// 2r / (M sigma_c^4) exp(-r^2 / (M sigma_c^4)).
double pair_correlation_pdf(double r, std::size_t blocklength, double codeword_var);

/// (1 - e^{-M x^2})^T under the independent-pairs model, evaluated in log space.
double max_correlation_cdf(double x, std::size_t blocklength, std::size_t pairs);

/// Inverse of max_correlation_cdf for p in (0, 1).
double max_correlation_quantile(double p, std::size_t blocklength, std::size_t pairs);

/// Requires pairs >= 2.
GumbelParams gumbel_params(std::size_t blocklength, std::size_t pairs);

/// exp(-exp(-(z - location) / scale)).
double gumbel_cdf(double z, double location, double scale);
double gumbel_pdf(double z, double location, double scale);

}  // namespace fblfas
