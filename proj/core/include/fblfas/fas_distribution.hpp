#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fblfas/channel_model.hpp"
#include "fblfas/quadrature.hpp"

namespace fblfas {

enum class DistMethod { exact, mvti, empirical };

std::string_view to_string(DistMethod m);
/// Throws InvalidArgument for unknown names.
DistMethod dist_method_from_string(std::string_view name);

struct DistributionEval {
  std::vector<double> r_grid;
  std::vector<double> cdf;
  std::vector<double> pdf;
  DistMethod method = DistMethod::exact;
  std::string config_hash;
};

/// Best-port amplitude CDF as a single integral over t = |g_1|^2 / sigma^2.
/// Degenerate ports are dropped from the product. Throws NumericFailure when
/// the quadrature does not converge.
double cdf_exact(double r, const SystemConfig& config, const PortCorrelationProfile& profile,
                 const quad::QuadratureSpec& quad = {});

/// Density matching cdf_exact: boundary term plus one inner integral per port.
/// Tiny negative quadrature noise is clamped to 0.
double pdf_exact(double r, const SystemConfig& config, const PortCorrelationProfile& profile,
                 const quad::QuadratureSpec& quad = {});

/// t_bar = (1 - (1 + a) e^{-a}) / (1 - e^{-a}); 0 at a = 0.
double frozen_point(double a_r);

/// Integral-free approximations with the inner integral frozen at t_bar.
double cdf_mvti(double r, const SystemConfig& config, const PortCorrelationProfile& profile);
double pdf_mvti(double r, const SystemConfig& config, const PortCorrelationProfile& profile);

/// E|g_FAS|^2 = integral of 2 r (1 - C(r)) using the chosen analytic CDF.
double second_moment(const SystemConfig& config, const PortCorrelationProfile& profile,
                     DistMethod method = DistMethod::mvti, const quad::QuadratureSpec& quad = {});

/// n points from 0 to r_max inclusive (n = 1 gives {r_max}).
std::vector<double> uniform_grid(double r_max, std::size_t points);

/// Evaluates cdf and pdf at every grid point with the given analytic method.
DistributionEval evaluate_distribution(const SystemConfig& config,
                                       const PortCorrelationProfile& profile, DistMethod method,
                                       std::span<const double> r_grid,
                                       const quad::QuadratureSpec& quad = {},
                                       std::size_t workers = 1);

/// n draws of |g_FAS|; draw i uses stream (seed, i), so the result does not
/// depend on the worker count.
std::vector<double> sample_gfas(const SystemConfig& config, const PortCorrelationProfile& profile,
                                std::size_t n_samples, std::uint64_t seed,
                                std::size_t workers = 1);

/// Empirical CDF (fraction of draws <= r) and Freedman-Diaconis histogram
/// density at each grid point. An empty grid means 200 uniform points up to
/// the largest draw.
DistributionEval empirical_distribution(const SystemConfig& config,
                                        const PortCorrelationProfile& profile,
                                        std::size_t n_samples, std::uint64_t seed,
                                        std::span<const double> r_grid = {},
                                        std::size_t workers = 1);

/// Same construction from draws already in hand.
DistributionEval empirical_from_samples(std::vector<double> samples,
                                        std::span<const double> r_grid);

/// Freedman-Diaconis width 2 IQR n^{-1/3}; falls back to range or 1.
double freedman_diaconis_width(std::span<const double> sorted_samples);

/// Identifier of (config, profile).
std::string config_hash(const SystemConfig& config, const PortCorrelationProfile& profile);

/// Header r,cdf,pdf,method.
std::string to_csv(const DistributionEval& eval);

}  // namespace fblfas
