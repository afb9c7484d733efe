#include "fblfas/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "fblfas/errors.hpp"
#include "fblfas/special_functions.hpp"

namespace fblfas {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void SystemConfig::validate() const {
  require(n_ports >= 1, "n_ports must be >= 1");
  require(finite_positive(aperture_w), "aperture_w must be finite and > 0");
  require(finite_positive(channel_var), "channel_var must be finite and > 0");
  require(finite_positive(noise_var), "noise_var must be finite and > 0");
  require(blocklength >= 1, "blocklength must be >= 1");
  require(n_users >= 1, "n_users must be >= 1");
  if (codeword_var) require(finite_positive(*codeword_var), "codeword_var must be finite and > 0");
}

void SystemConfig::set_snr_db(double snr_db) {
  require(std::isfinite(snr_db), "snr_db must be finite");
  noise_var = channel_var / std::pow(10.0, snr_db / 10.0);
}

void to_json(nlohmann::json& j, const SystemConfig& c) {
  j = nlohmann::json{{"n_ports", c.n_ports},         {"aperture_w", c.aperture_w},
                     {"channel_var", c.channel_var}, {"noise_var", c.noise_var},
                     {"blocklength", c.blocklength}, {"n_users", c.n_users}};
  if (c.codeword_var) j["codeword_var"] = *c.codeword_var;
}

namespace {

std::size_t get_count(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer()) {
    const auto i = v.get<std::int64_t>();
    require(i >= 0, std::string(key) + " must be non-negative");
    return static_cast<std::size_t>(i);
  }
  throw InvalidArgument(std::string(key) + " must be an integer");
}

double get_real(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  require(v.is_number(), std::string(key) + " must be a number");
  return v.get<double>();
}

}  // namespace

void from_json(const nlohmann::json& j, SystemConfig& c) {
  require(j.is_object(), "SystemConfig must be a JSON object");
  static const char* const kKeys[] = {"n_ports",   "aperture_w",  "channel_var", "noise_var",
                                      "blocklength", "n_users", "codeword_var"};
  for (const auto& [key, _] : j.items()) {
    require(std::find_if(std::begin(kKeys), std::end(kKeys),
                         [&](const char* k) { return key == k; }) != std::end(kKeys),
            "unknown SystemConfig field: " + key);
  }
  for (const char* key : kKeys) {
    if (std::string_view(key) == "codeword_var") continue;
    require(j.contains(key), std::string("missing SystemConfig field: ") + key);
  }
  SystemConfig out;
  out.n_ports = get_count(j, "n_ports");
  out.aperture_w = get_real(j, "aperture_w");
  out.channel_var = get_real(j, "channel_var");
  out.noise_var = get_real(j, "noise_var");
  out.blocklength = get_count(j, "blocklength");
  out.n_users = get_count(j, "n_users");
  if (j.contains("codeword_var") && !j.at("codeword_var").is_null())
    out.codeword_var = get_real(j, "codeword_var");
  out.validate();
  c = out;
}

bool PortCorrelationProfile::is_degenerate(std::size_t k) const {
  return std::binary_search(degenerate_ports.begin(), degenerate_ports.end(), k);
}

PortCorrelationProfile profile_from_mu(std::vector<double> mu) {
  require(!mu.empty(), "profile must have at least one port");
  require(mu[0] == 1.0, "mu[0] must be exactly 1");
  PortCorrelationProfile p;
  for (std::size_t k = 1; k < mu.size(); ++k) {
    require(std::isfinite(mu[k]) && std::abs(mu[k]) <= 1.0, "|mu_k| must be <= 1");
    if (std::abs(mu[k]) >= 1.0 - kDegenerateEps) p.degenerate_ports.push_back(k);
  }
  p.mu = std::move(mu);
  return p;
}

PortCorrelationProfile port_correlations(std::size_t n_ports, double aperture_w) {
  require(n_ports >= 1, "n_ports must be >= 1");
  require(finite_positive(aperture_w), "aperture_w must be finite and > 0");
  std::vector<double> mu(n_ports, 1.0);
  for (std::size_t k = 1; k < n_ports; ++k) {
    const double spacing = static_cast<double>(k) / static_cast<double>(n_ports - 1);
    mu[k] = special::bessel_j0(2.0 * std::numbers::pi * spacing * aperture_w);
  }
  return profile_from_mu(std::move(mu));
}

PortCorrelationProfile profile_from_positions(std::span<const double> positions) {
  require(!positions.empty(), "need at least one port position");
  std::vector<double> mu(positions.size(), 1.0);
  for (std::size_t k = 1; k < positions.size(); ++k) {
    require(std::isfinite(positions[k]), "port positions must be finite");
    mu[k] = special::bessel_j0(2.0 * std::numbers::pi * (positions[k] - positions[0]));
  }
  return profile_from_mu(std::move(mu));
}

void check_consistent(const SystemConfig& config, const PortCorrelationProfile& profile) {
  require(profile.size() == config.n_ports, "profile length differs from n_ports");
}

PortChoice select_port(std::span<const std::complex<double>> gains) {
  require(!gains.empty(), "select_port needs a non-empty gain vector");
  PortChoice best{0, std::abs(gains[0])};
  for (std::size_t k = 1; k < gains.size(); ++k) {
    const double a = std::abs(gains[k]);
    if (a > best.amplitude) best = {k, a};
  }
  return best;
}

namespace {

void fill_gains(const SystemConfig& config, const PortCorrelationProfile& profile, RngStream& rng,
                std::vector<std::complex<double>>& gains) {
  const std::size_t n = profile.size();
  const double sigma = std::sqrt(config.channel_var);
  gains.resize(n);
  const std::complex<double> x0 = rng.complex_normal(1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::complex<double> xk = rng.complex_normal(1.0);
    const double mu = profile.mu[k];
    if (k == 0) {
      gains[k] = sigma * x0;
    } else if (std::abs(mu) >= 1.0 - kDegenerateEps) {
      gains[k] = (mu > 0 ? 1.0 : -1.0) * gains[0];
    } else {
      gains[k] = sigma * (std::sqrt(1.0 - mu * mu) * xk + mu * x0);
    }
  }
}

}  // namespace

ChannelSample sample_channels(const SystemConfig& config, const PortCorrelationProfile& profile,
                              RngStream& rng) {
  check_consistent(config, profile);
  ChannelSample s;
  fill_gains(config, profile, rng, s.gains);
  const PortChoice c = select_port(s.gains);
  s.selected_index = c.index;
  s.selected_amp = c.amplitude;
  return s;
}

double sample_selected_amplitude(const SystemConfig& config, const PortCorrelationProfile& profile,
                                 RngStream& rng, std::vector<std::complex<double>>& scratch) {
  fill_gains(config, profile, rng, scratch);
  return select_port(scratch).amplitude;
}

}  // namespace fblfas
