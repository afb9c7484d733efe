#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fblfas/rng.hpp"

namespace fblfas {

/// Scenario parameters shared by every module.
struct SystemConfig {
  std::size_t n_ports = 1;       // N
  double aperture_w = 0.5;       // W, wavelengths
  double channel_var = 1.0;      // sigma^2 = E|g|^2
  double noise_var = 1.0;        // sigma_eta^2
  std::size_t blocklength = 1;   // M
  std::size_t n_users = 1;       // U
  std::optional<double> codeword_var;  // sigma_c^2; defaults to 1/M

  /// Throws InvalidArgument on any violated constraint.
  void validate() const;

  double sigma_c2() const {
    return codeword_var ? *codeword_var : 1.0 / static_cast<double>(blocklength);
  }
  double snr() const { return channel_var / noise_var; }

  /// Sets noise_var so that channel_var / noise_var equals 10^(snr_db/10).
  void set_snr_db(double snr_db);
};

void to_json(nlohmann::json& j, const SystemConfig& c);
/// Strict: unknown keys and missing required keys raise InvalidArgument.
void from_json(const nlohmann::json& j, SystemConfig& c);

/// Ports with |mu| at or above 1 - kDegenerateEps are treated as copies of port 1.
inline constexpr double kDegenerateEps = 1e-9;

/// Correlation of every port with the reference port (index 0).
struct PortCorrelationProfile {
  std::vector<double> mu;
  std::vector<std::size_t> degenerate_ports;  // indices >= 1

  std::size_t size() const { return mu.size(); }
  bool is_degenerate(std::size_t k) const;
};

/// mu_k = J0(2 pi k W / (N - 1)) for k = 0..N-1. N = 1 gives {1}.
PortCorrelationProfile port_correlations(std::size_t n_ports, double aperture_w);

/// Profile from explicit mu values; mu[0] must be exactly 1 and |mu| <= 1.
PortCorrelationProfile profile_from_mu(std::vector<double> mu);

/// Profile from port positions in wavelengths, relative to positions[0].
/// Prefixes of a position list give nested profiles.
PortCorrelationProfile profile_from_positions(std::span<const double> positions);

struct ChannelSample {
  std::vector<std::complex<double>> gains;
  std::size_t selected_index = 0;
  double selected_amp = 0.0;
};

struct PortChoice {
  std::size_t index;
  double amplitude;
};

/// Argmax of |gains|, lowest index on ties. Throws InvalidArgument when empty.
PortChoice select_port(std::span<const std::complex<double>> gains);

/// One user's N correlated port gains plus the selected port.
/// Consumes exactly N + 1 complex normals from rng.
ChannelSample sample_channels(const SystemConfig& config, const PortCorrelationProfile& profile,
                              RngStream& rng);

/// Allocation-free variant returning only |g_FAS|.
double sample_selected_amplitude(const SystemConfig& config, const PortCorrelationProfile& profile,
                                 RngStream& rng, std::vector<std::complex<double>>& scratch);

/// Throws InvalidArgument if the profile length differs from config.n_ports.
void check_consistent(const SystemConfig& config, const PortCorrelationProfile& profile);

}  // namespace fblfas
