#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "fblfas/channel_model.hpp"
#include "fblfas/quadrature.hpp"

namespace fblfas {

enum class BlerKind { conditional_fas, statistical_fas, l_antenna, random_coding };

std::string_view to_string(BlerKind k);

/// Density used inside the statistical (no-CSI) bound.
enum class DensityForm { mvti, exact };

DensityForm density_form_from_string(std::string_view name);

struct BlerPoint {
  double snr_db = 0.0;
  BlerKind kind = BlerKind::conditional_fas;
  std::string params;      // free-form "key=value;..." description
  double value = 0.0;      // min(raw_value, 1)
  double raw_value = 0.0;  // union bound before clamping, may exceed 1
};

/// 2 U' sigma_c^2 g^2.
double error_noise_var(std::size_t u_prime, double codeword_var, double g_amp);

/// ln C(U, U')^2.
double log_combinatorial_term(std::size_t n_users, std::size_t u_prime);

/// Raw conditional union bound given |g_FAS| = g_amp (log-sum-exp over U').
double conditional_bound_raw(double g_amp, const SystemConfig& config);

BlerPoint conditional_bler_fas(double g_amp, const SystemConfig& config);

/// Upper integration limit sigma sqrt(ln(N 1e10)): beyond it 1 - CDF <= 1e-10.
double statistical_r_max(const SystemConfig& config);

/// Conditional bound averaged over the |g_FAS| density.
BlerPoint statistical_bler_fas(const SystemConfig& config, const PortCorrelationProfile& profile,
                               DensityForm density = DensityForm::mvti,
                               const quad::QuadratureSpec& quad = {});

/// L-antenna benchmark bound; the exponent uses M L.
BlerPoint bler_l_antenna(std::size_t n_antennas, const SystemConfig& config);

/// Normal approximation Q((C - R_c) / sqrt(V / n0)) with R_c = log2(U) / n0.
double random_coding_bler(std::size_t n0, std::size_t n_users, double snr_linear);

BlerPoint random_coding_point(std::size_t n0, const SystemConfig& config);

/// Header snr_db,kind,params,value,raw_value.
std::string to_csv(std::span<const BlerPoint> points);

double snr_db(const SystemConfig& config);

}  // namespace fblfas
