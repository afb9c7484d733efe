#include "fblfas/fas_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fblfas/errors.hpp"
#include "fblfas/parallel.hpp"
#include "fblfas/special_functions.hpp"
#include "fblfas/text_format.hpp"

namespace fblfas {

std::string_view to_string(DistMethod m) {
  switch (m) {
    case DistMethod::exact: return "exact";
    case DistMethod::mvti: return "mvti";
    case DistMethod::empirical: return "empirical";
  }
  return "unknown";
}

DistMethod dist_method_from_string(std::string_view name) {
  if (name == "exact") return DistMethod::exact;
  if (name == "mvti") return DistMethod::mvti;
  if (name == "empirical") return DistMethod::empirical;
  throw InvalidArgument("unknown distribution method: " + std::string(name));
}

namespace {

// Conditioned on t = |g_1|^2 / sigma^2, |g_k| is Rician:
//   P(|g_k| <= r | t) = 1 - Q1(alpha_k sqrt(t), beta_k r)
// with alpha_k^2 = 2 mu^2 / (1 - mu^2) and beta_k^2 = 2 / (sigma^2 (1 - mu^2)).
class PortFactors {
 public:
  PortFactors(const SystemConfig& config, const PortCorrelationProfile& profile) {
    config.validate();
    check_consistent(config, profile);
    for (std::size_t k = 1; k < profile.size(); ++k) {
      if (profile.is_degenerate(k)) continue;
      const double mu2 = profile.mu[k] * profile.mu[k];
      alpha_.push_back(std::sqrt(2.0 * mu2 / (1.0 - mu2)));
      beta_.push_back(std::sqrt(2.0 / (config.channel_var * (1.0 - mu2))));
    }
    f_.resize(alpha_.size());
    prefix_.resize(alpha_.size() + 1);
    suffix_.resize(alpha_.size() + 1);
  }

  std::size_t size() const { return alpha_.size(); }

  // Fills f_ with the per-port factors at (t, r); returns their product.
  double product(double t, double r) {
    const double st = std::sqrt(std::max(t, 0.0));
    double p = 1.0;
    for (std::size_t i = 0; i < size(); ++i) {
      f_[i] = special::marcum_q1_complement(alpha_[i] * st, beta_[i] * r);
      p *= f_[i];
    }
    return p;
  }

  // Sum over i of prod_{k != i} F_k * dF_i/dr at (t, r).
  double derivative_sum(double t, double r) {
    const std::size_t n = size();
    if (n == 0) return 0.0;
    product(t, r);
    prefix_[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) prefix_[i + 1] = prefix_[i] * f_[i];
    suffix_[n] = 1.0;
    for (std::size_t i = n; i-- > 0;) suffix_[i] = suffix_[i + 1] * f_[i];
    const double st = std::sqrt(std::max(t, 0.0));
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double others = prefix_[i] * suffix_[i + 1];
      if (others == 0.0) continue;
      const double a = alpha_[i] * st;
      const double b = beta_[i] * r;
      const double d = beta_[i] * beta_[i] * r * std::exp(-0.5 * (a - b) * (a - b)) *
                       special::bessel_i0_scaled(a * b);
      sum += others * d;
    }
    return sum;
  }

 private:
  std::vector<double> alpha_, beta_;
  std::vector<double> f_, prefix_, suffix_;
};

void require_radius(double r) {
  if (!std::isfinite(r) || r < 0.0) throw InvalidArgument("r must be finite and >= 0");
}

}  // namespace

double cdf_exact(double r, const SystemConfig& config, const PortCorrelationProfile& profile,
                 const quad::QuadratureSpec& quad) {
  require_radius(r);
  quad.validate();
  PortFactors ports(config, profile);
  const double a_r = r * r / config.channel_var;
  if (r == 0.0) return 0.0;
  if (ports.size() == 0) return -std::expm1(-a_r);
  // Union bound: 1 - F <= N e^{-a_r}; below half an ulp of 1 the result rounds to 1.
  if (std::log(static_cast<double>(config.n_ports)) - a_r < std::log(0x1p-54)) return 1.0;
  const double v = quad::integrate_or_throw(
      [&](double t) { return std::exp(-t) * ports.product(t, r); }, 0.0, a_r, quad, "cdf_exact");
  return std::clamp(v, 0.0, 1.0);
}

double pdf_exact(double r, const SystemConfig& config, const PortCorrelationProfile& profile,
                 const quad::QuadratureSpec& quad) {
  require_radius(r);
  quad.validate();
  PortFactors ports(config, profile);
  const double a_r = r * r / config.channel_var;
  const double boundary = 2.0 * r / config.channel_var * std::exp(-a_r) * ports.product(a_r, r);
  if (r == 0.0 || ports.size() == 0) return boundary;
  const double inner = quad::integrate_or_throw(
      [&](double t) { return std::exp(-t) * ports.derivative_sum(t, r); }, 0.0, a_r, quad,
      "pdf_exact");
  return std::max(0.0, boundary + inner);
}

double frozen_point(double a_r) {
  if (std::isnan(a_r) || a_r < 0.0) throw InvalidArgument("a_r must be >= 0");
  if (a_r == 0.0) return 0.0;
  if (a_r < 1e-3) {
    const double a2 = a_r * a_r;
    return a_r / 2.0 - a2 / 12.0 + a2 * a2 / 720.0;
  }
  if (std::isinf(a_r)) return 1.0;
  // (1 - (1 + a) e^{-a}) / (1 - e^{-a}) = 1 - a / (e^a - 1)
  return 1.0 - a_r / std::expm1(a_r);
}

double cdf_mvti(double r, const SystemConfig& config, const PortCorrelationProfile& profile) {
  require_radius(r);
  PortFactors ports(config, profile);
  const double a_r = r * r / config.channel_var;
  const double head = -std::expm1(-a_r);
  if (head == 0.0) return 0.0;
  return std::clamp(head * ports.product(frozen_point(a_r), r), 0.0, 1.0);
}

double pdf_mvti(double r, const SystemConfig& config, const PortCorrelationProfile& profile) {
  require_radius(r);
  PortFactors ports(config, profile);
  const double a_r = r * r / config.channel_var;
  const double boundary = 2.0 * r / config.channel_var * std::exp(-a_r) * ports.product(a_r, r);
  const double correction = -std::expm1(-a_r) * ports.derivative_sum(frozen_point(a_r), r);
  return std::max(0.0, boundary + correction);
}

double second_moment(const SystemConfig& config, const PortCorrelationProfile& profile,
                     DistMethod method, const quad::QuadratureSpec& quad) {
  if (method == DistMethod::empirical) throw InvalidArgument("second_moment needs an analytic CDF");
  // Beyond r_max the tail 1 - C(r) <= N e^{-r^2/sigma^2} adds below 1e-12 sigma^2.
  const double r_max =
      std::sqrt(config.channel_var * std::log(static_cast<double>(config.n_ports) * 1e12));
  auto survival = [&](double r) {
    const double c = method == DistMethod::exact ? cdf_exact(r, config, profile, quad)
                                                 : cdf_mvti(r, config, profile);
    return 2.0 * r * (1.0 - c);
  };
  quad::QuadratureSpec outer = quad;
  outer.rel_tol = std::max(quad.rel_tol, 1e-7);
  return quad::integrate_or_throw(survival, 0.0, r_max, outer, "second_moment");
}

std::vector<double> uniform_grid(double r_max, std::size_t points) {
  if (!std::isfinite(r_max) || r_max < 0.0) throw InvalidArgument("r_max must be finite and >= 0");
  if (points == 0) throw InvalidArgument("grid needs at least one point");
  if (points == 1) return {r_max};
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = r_max * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return g;
}

DistributionEval evaluate_distribution(const SystemConfig& config,
                                       const PortCorrelationProfile& profile, DistMethod method,
                                       std::span<const double> r_grid,
                                       const quad::QuadratureSpec& quad, std::size_t workers) {
  if (method == DistMethod::empirical) {
    throw InvalidArgument("evaluate_distribution handles analytic methods only");
  }
  config.validate();
  check_consistent(config, profile);
  DistributionEval out;
  out.r_grid.assign(r_grid.begin(), r_grid.end());
  out.cdf.resize(r_grid.size());
  out.pdf.resize(r_grid.size());
  out.method = method;
  out.config_hash = config_hash(config, profile);
  parallel_for(r_grid.size(), workers, [&](std::size_t i) {
    const double r = r_grid[i];
    if (method == DistMethod::exact) {
      out.cdf[i] = cdf_exact(r, config, profile, quad);
      out.pdf[i] = pdf_exact(r, config, profile, quad);
    } else {
      out.cdf[i] = cdf_mvti(r, config, profile);
      out.pdf[i] = pdf_mvti(r, config, profile);
    }
  });
  return out;
}

std::vector<double> sample_gfas(const SystemConfig& config, const PortCorrelationProfile& profile,
                                std::size_t n_samples, std::uint64_t seed, std::size_t workers) {
  config.validate();
  check_consistent(config, profile);
  std::vector<double> out(n_samples);
  if (workers == 0) workers = default_workers();
  workers = std::max<std::size_t>(1, std::min(workers, n_samples));
  // One scratch buffer per contiguous block of draws.
  std::vector<std::vector<std::complex<double>>> scratch(workers);
  parallel_for(workers, workers, [&](std::size_t w) {
    const std::size_t begin = n_samples * w / workers;
    const std::size_t end = n_samples * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) {
      RngStream rng(seed, i);
      out[i] = sample_selected_amplitude(config, profile, rng, scratch[w]);
    }
  });
  return out;
}

double freedman_diaconis_width(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n == 0) throw InvalidArgument("need at least one sample");
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, n - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  };
  const double iqr = quantile(0.75) - quantile(0.25);
  if (iqr > 0.0) return 2.0 * iqr / std::cbrt(static_cast<double>(n));
  const double range = sorted.back() - sorted.front();
  return range > 0.0 ? range : 1.0;
}

DistributionEval empirical_from_samples(std::vector<double> samples,
                                        std::span<const double> r_grid) {
  if (samples.empty()) throw InvalidArgument("need at least one sample");
  std::sort(samples.begin(), samples.end());
  DistributionEval out;
  out.method = DistMethod::empirical;
  if (r_grid.empty()) {
    out.r_grid = uniform_grid(samples.back(), 200);
  } else {
    out.r_grid.assign(r_grid.begin(), r_grid.end());
  }
  const double n = static_cast<double>(samples.size());
  const double h = freedman_diaconis_width(samples);
  out.cdf.resize(out.r_grid.size());
  out.pdf.resize(out.r_grid.size());
  for (std::size_t i = 0; i < out.r_grid.size(); ++i) {
    const double r = out.r_grid[i];
    const auto upto = std::upper_bound(samples.begin(), samples.end(), r) - samples.begin();
    out.cdf[i] = static_cast<double>(upto) / n;
    // Bins are [j h, (j+1) h) anchored at the origin.
    const double lo = std::floor(r / h) * h;
    const auto first = std::lower_bound(samples.begin(), samples.end(), lo);
    const auto last = std::lower_bound(samples.begin(), samples.end(), lo + h);
    out.pdf[i] = static_cast<double>(last - first) / (n * h);
  }
  return out;
}

DistributionEval empirical_distribution(const SystemConfig& config,
                                        const PortCorrelationProfile& profile,
                                        std::size_t n_samples, std::uint64_t seed,
                                        std::span<const double> r_grid, std::size_t workers) {
  if (n_samples == 0) throw InvalidArgument("n_samples must be >= 1");
  DistributionEval out =
      empirical_from_samples(sample_gfas(config, profile, n_samples, seed, workers), r_grid);
  out.config_hash = config_hash(config, profile);
  return out;
}

std::string config_hash(const SystemConfig& config, const PortCorrelationProfile& profile) {
  nlohmann::json j = config;
  std::string bytes = j.dump();
  for (double m : profile.mu) {
    bytes += ',';
    bytes += format_double(m);
  }
  return hex64(fnv1a64(bytes));
}

std::string to_csv(const DistributionEval& eval) {
  std::ostringstream os;
  os << "r,cdf,pdf,method\n";
  const std::string_view m = to_string(eval.method);
  for (std::size_t i = 0; i < eval.r_grid.size(); ++i) {
    os << format_double(eval.r_grid[i]) << ',' << format_double(eval.cdf[i]) << ','
       << format_double(eval.pdf[i]) << ',' << m << '\n';
  }
  return os.str();
}

}  // namespace fblfas
