#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fblfas/channel_model.hpp"
#include "fblfas/fas_distribution.hpp"

namespace fblfas {

struct McReport {
  std::string quantity;
  double estimate = 0.0;
  double std_error = 0.0;  // sample std / sqrt(n); 0 when n < 2
  std::size_t n_trials = 0;
  std::uint64_t seed = 0;
};

/// Fields quantity, estimate, stderr, n_trials, seed.
void to_json(nlohmann::json& j, const McReport& r);

/// Mean and standard error of per-trial values, reduced in index order by
/// pairwise summation.
McReport summarize(std::string quantity, std::span<const double> values, std::uint64_t seed);

struct CorrelationReports {
  McReport rho_bar;
  McReport rho_max;
};

/// Per trial: U codewords with CN(0, codeword_var) entries, all normalized
/// pair correlations |c_i^H c_j| / (|c_i| |c_j|); reports the trial means of
/// the pair average and the pair maximum. codeword_var <= 0 means 1/M.
CorrelationReports mc_codeword_correlation(std::size_t blocklength, std::size_t n_users,
                                           std::size_t n_trials, std::uint64_t seed,
                                           std::size_t workers = 1, double codeword_var = 0.0);

/// Empirical |g_FAS| distribution (shares the empirical_distribution path).
DistributionEval mc_gfas(const SystemConfig& config, const PortCorrelationProfile& profile,
                         std::size_t n_samples, std::uint64_t seed,
                         std::span<const double> r_grid = {}, std::size_t workers = 1);

/// Realized SINR of user 0 per trial: every user picks its best port, codewords
/// are unit-norm Gaussian, interference uses the realized inner products and
/// the noise power is sigma_eta^2.
std::vector<double> mc_sinr_samples(const SystemConfig& config,
                                    const PortCorrelationProfile& profile, std::size_t n_trials,
                                    std::uint64_t seed, std::size_t workers = 1);

/// Fraction of trials with realized SINR <= gamma_th. Needs n_trials >= 100.
McReport mc_sinr_outage(const SystemConfig& config, const PortCorrelationProfile& profile,
                        double gamma_th, std::size_t n_trials, std::uint64_t seed,
                        std::size_t workers = 1);

/// Hard limits for the exhaustive detector.
inline constexpr std::size_t kMlMaxUsers = 6;
inline constexpr std::size_t kMlMaxBlocklength = 10;
inline constexpr std::size_t kMlMaxHypotheses = 1'000'000;

/// Number of wrong hypotheses searched per trial: C(2U, U) - 1.
std::size_t ml_hypothesis_count(std::size_t n_users);

/// Exhaustive maximum-likelihood detection with known channel gains.
///
/// Per trial, U users transmit Gaussian codewords (entries CN(0, sigma_c^2))
/// over M uses with port-selected gains; noise entries are CN(0, sigma_eta^2 /
/// M). A hypothesis replaces a set of U' users by U' fresh alternate codewords.
/// The detector picks the smallest residual; a wrong hypothesis wins only if it
/// strictly beats the truth. The per-trial value is U'_winner / U, the
/// fraction of users in error. Raises BudgetExceeded beyond the hard limits.
McReport mc_ml_bler_small(const SystemConfig& config, const PortCorrelationProfile& profile,
                          std::size_t n_trials, std::uint64_t seed, std::size_t workers = 1);

}  // namespace fblfas
