#include "fblfas/bler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "fblfas/errors.hpp"
#include "fblfas/fas_distribution.hpp"
#include "fblfas/special_functions.hpp"
#include "fblfas/text_format.hpp"

namespace fblfas {

std::string_view to_string(BlerKind k) {
  switch (k) {
    case BlerKind::conditional_fas: return "conditional-fas";
    case BlerKind::statistical_fas: return "statistical-fas";
    case BlerKind::l_antenna: return "l-antenna";
    case BlerKind::random_coding: return "random-coding";
  }
  return "unknown";
}

DensityForm density_form_from_string(std::string_view name) {
  if (name == "mvti") return DensityForm::mvti;
  if (name == "exact") return DensityForm::exact;
  throw InvalidArgument("unknown density form: " + std::string(name));
}

double snr_db(const SystemConfig& config) { return 10.0 * std::log10(config.snr()); }

double error_noise_var(std::size_t u_prime, double codeword_var, double g_amp) {
  if (!(codeword_var > 0.0)) throw InvalidArgument("codeword_var must be > 0");
  if (!(g_amp >= 0.0)) throw InvalidArgument("g_amp must be >= 0");
  return 2.0 * static_cast<double>(u_prime) * codeword_var * g_amp * g_amp;
}

double log_combinatorial_term(std::size_t n_users, std::size_t u_prime) {
  return 2.0 * special::log_binomial(n_users, u_prime);
}

namespace {

BlerPoint make_point(const SystemConfig& config, BlerKind kind, std::string params, double raw) {
  BlerPoint p;
  p.snr_db = snr_db(config);
  p.kind = kind;
  p.params = std::move(params);
  p.raw_value = raw;
  p.value = std::min(raw, 1.0);
  return p;
}

// sum_{U'=1}^{U} (U'/U) exp(L' - exponent(U')), combined in log space.
template <class Exponent>
double union_bound(std::size_t n_users, Exponent&& exponent) {
  const double u = static_cast<double>(n_users);
  std::vector<double> logs;
  logs.reserve(n_users);
  for (std::size_t up = 1; up <= n_users; ++up) {
    logs.push_back(std::log(static_cast<double>(up) / u) + log_combinatorial_term(n_users, up) -
                   exponent(up));
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  if (top == -std::numeric_limits<double>::infinity()) return 0.0;
  double s = 0.0;
  for (double l : logs) s += std::exp(l - top);
  return std::exp(top + std::log(s));
}

std::string kv(std::string_view key, double v) {
  return std::string(key) + "=" + format_double(v);
}

}  // namespace

double conditional_bound_raw(double g_amp, const SystemConfig& config) {
  if (!(g_amp >= 0.0) || !std::isfinite(g_amp)) throw InvalidArgument("g_amp must be finite and >= 0");
  const double m = static_cast<double>(config.blocklength);
  const double sc2 = config.sigma_c2();
  return union_bound(config.n_users, [&](std::size_t up) {
    return m * std::log1p(0.25 * error_noise_var(up, sc2, g_amp) / config.noise_var);
  });
}

BlerPoint conditional_bler_fas(double g_amp, const SystemConfig& config) {
  config.validate();
  return make_point(config, BlerKind::conditional_fas, kv("g", g_amp),
                    conditional_bound_raw(g_amp, config));
}

double statistical_r_max(const SystemConfig& config) {
  return std::sqrt(config.channel_var * std::log(static_cast<double>(config.n_ports) * 1e10));
}

BlerPoint statistical_bler_fas(const SystemConfig& config, const PortCorrelationProfile& profile,
                               DensityForm density, const quad::QuadratureSpec& quad) {
  config.validate();
  check_consistent(config, profile);
  quad.validate();
  auto integrand = [&](double r) {
    const double f = density == DensityForm::exact ? pdf_exact(r, config, profile, quad)
                                                   : pdf_mvti(r, config, profile);
    if (f == 0.0) return 0.0;
    return f * conditional_bound_raw(r, config);
  };
  const double r_max = statistical_r_max(config);
  // Relative accuracy is what matters for deep-tail BLER values.
  quad::QuadratureSpec outer = quad;
  outer.abs_tol = std::min(quad.abs_tol, 1e-300);
  outer.rel_tol = std::max(quad.rel_tol, 1e-7);
  const double raw = quad::integrate_or_throw(integrand, 0.0, r_max, outer, "statistical_bler_fas");
  std::string params = "N=" + std::to_string(config.n_ports) + ";density=" +
                       (density == DensityForm::exact ? "exact" : "mvti");
  return make_point(config, BlerKind::statistical_fas, std::move(params), std::max(raw, 0.0));
}

BlerPoint bler_l_antenna(std::size_t n_antennas, const SystemConfig& config) {
  config.validate();
  if (n_antennas < 1) throw InvalidArgument("L must be >= 1");
  const double ml = static_cast<double>(config.blocklength) * static_cast<double>(n_antennas);
  const double sc2 = config.sigma_c2();
  const double raw = union_bound(config.n_users, [&](std::size_t up) {
    return ml * std::log1p(0.5 * static_cast<double>(up) * sc2 / config.noise_var);
  });
  return make_point(config, BlerKind::l_antenna, "L=" + std::to_string(n_antennas), raw);
}

double random_coding_bler(std::size_t n0, std::size_t n_users, double snr_linear) {
  if (n0 < 1) throw InvalidArgument("n0 must be >= 1");
  if (n_users < 1) throw InvalidArgument("U must be >= 1");
  if (!(snr_linear > 0.0) || !std::isfinite(snr_linear)) throw InvalidArgument("snr must be > 0");
  const double a = snr_linear;
  const double capacity = 0.5 * std::log2(1.0 + a);
  const double ln2 = std::log(2.0);
  const double dispersion = (a / 2.0) * (a + 2.0) / ((a + 1.0) * (a + 1.0)) * ln2 * ln2;
  const double rate = std::log2(static_cast<double>(n_users)) / static_cast<double>(n0);
  return special::gauss_q((capacity - rate) / std::sqrt(dispersion / static_cast<double>(n0)));
}

BlerPoint random_coding_point(std::size_t n0, const SystemConfig& config) {
  config.validate();
  const double v = random_coding_bler(n0, config.n_users, config.snr());
  return make_point(config, BlerKind::random_coding, "n0=" + std::to_string(n0), v);
}

std::string to_csv(std::span<const BlerPoint> points) {
  std::ostringstream os;
  os << "snr_db,kind,params,value,raw_value\n";
  for (const auto& p : points) {
    os << format_double(p.snr_db) << ',' << to_string(p.kind) << ',' << p.params << ','
       << format_double(p.value) << ',' << format_double(p.raw_value) << '\n';
  }
  return os.str();
}

}  // namespace fblfas
