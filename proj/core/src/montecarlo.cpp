#include "fblfas/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <nlohmann/json.hpp>

#include "fblfas/errors.hpp"
#include "fblfas/parallel.hpp"
#include "fblfas/special_functions.hpp"

namespace fblfas {

using cplx = std::complex<double>;

void to_json(nlohmann::json& j, const McReport& r) {
  j = nlohmann::json{{"quantity", r.quantity},
                     {"estimate", r.estimate},
                     {"stderr", r.std_error},
                     {"n_trials", r.n_trials},
                     {"seed", r.seed}};
}

McReport summarize(std::string quantity, std::span<const double> values, std::uint64_t seed) {
  McReport r;
  r.quantity = std::move(quantity);
  r.n_trials = values.size();
  r.seed = seed;
  if (values.empty()) return r;
  const double n = static_cast<double>(values.size());
  r.estimate = pairwise_sum(values) / n;
  if (values.size() >= 2) {
    std::vector<double> dev(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - r.estimate;
      dev[i] = d * d;
    }
    r.std_error = std::sqrt(pairwise_sum(dev) / (n - 1.0) / n);
  }
  return r;
}

namespace {

// Stream ids per trial; each domain gets its own tag so entry points never
// share draws for the same seed.
enum : std::uint64_t { kTagCorrelation = 1, kTagSinr = 2, kTagMl = 3 };

RngStream trial_stream(std::uint64_t seed, std::uint64_t tag, std::size_t trial) {
  return RngStream(seed, tag).substream(trial);
}

void draw_codeword(RngStream& rng, double var, std::span<cplx> out) {
  for (auto& z : out) z = rng.complex_normal(var);
}

// Plain products; std::complex operator* would take the NaN-recovery path.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

double norm2(std::span<const cplx> a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return s;
}

}  // namespace

CorrelationReports mc_codeword_correlation(std::size_t blocklength, std::size_t n_users,
                                           std::size_t n_trials, std::uint64_t seed,
                                           std::size_t workers, double codeword_var) {
  if (blocklength < 1) throw InvalidArgument("blocklength must be >= 1");
  if (n_users < 2) throw InvalidArgument("codeword correlation needs n_users >= 2");
  if (n_trials < 1) throw InvalidArgument("n_trials must be >= 1");
  const double var = codeword_var > 0.0 ? codeword_var : 1.0 / static_cast<double>(blocklength);
  std::vector<double> means(n_trials), maxima(n_trials);
  parallel_for(n_trials, workers, [&](std::size_t t) {
    RngStream rng = trial_stream(seed, kTagCorrelation, t);
    // Normalized codewords, real and imaginary parts stored separately.
    std::vector<double> re(n_users * blocklength), im(n_users * blocklength);
    std::vector<cplx> c(blocklength);
    for (std::size_t u = 0; u < n_users; ++u) {
      draw_codeword(rng, var, c);
      const double inv = 1.0 / std::sqrt(norm2(c));
      for (std::size_t m = 0; m < blocklength; ++m) {
        re[u * blocklength + m] = c[m].real() * inv;
        im[u * blocklength + m] = c[m].imag() * inv;
      }
    }
    double sum = 0.0;
    double best = 0.0;
    for (std::size_t i = 0; i < n_users; ++i) {
      const double* ar = re.data() + i * blocklength;
      const double* ai = im.data() + i * blocklength;
      for (std::size_t j = i + 1; j < n_users; ++j) {
        const double* br = re.data() + j * blocklength;
        const double* bi = im.data() + j * blocklength;
        double sr = 0.0;
        double si = 0.0;
        for (std::size_t m = 0; m < blocklength; ++m) {
          sr += ar[m] * br[m] + ai[m] * bi[m];
          si += ar[m] * bi[m] - ai[m] * br[m];
        }
        const double rho = std::sqrt(sr * sr + si * si);
        sum += rho;
        best = std::max(best, rho);
      }
    }
    means[t] = sum / static_cast<double>(n_users * (n_users - 1) / 2);
    maxima[t] = best;
  });
  return {summarize("rho_bar", means, seed), summarize("rho_max", maxima, seed)};
}

DistributionEval mc_gfas(const SystemConfig& config, const PortCorrelationProfile& profile,
                         std::size_t n_samples, std::uint64_t seed, std::span<const double> r_grid,
                         std::size_t workers) {
  return empirical_distribution(config, profile, n_samples, seed, r_grid, workers);
}

namespace {

cplx selected_gain(const SystemConfig& config, const PortCorrelationProfile& profile,
                   RngStream& rng) {
  const ChannelSample s = sample_channels(config, profile, rng);
  return s.gains[s.selected_index];
}

}  // namespace

std::vector<double> mc_sinr_samples(const SystemConfig& config,
                                    const PortCorrelationProfile& profile, std::size_t n_trials,
                                    std::uint64_t seed, std::size_t workers) {
  config.validate();
  check_consistent(config, profile);
  const std::size_t u_count = config.n_users;
  const std::size_t m = config.blocklength;
  std::vector<double> out(n_trials);
  parallel_for(n_trials, workers, [&](std::size_t t) {
    RngStream rng = trial_stream(seed, kTagSinr, t);
    std::vector<cplx> x(m), interference(m, 0.0);
    double signal = 0.0;
    for (std::size_t u = 0; u < u_count; ++u) {
      const cplx g = selected_gain(config, profile, rng);
      draw_codeword(rng, 1.0, x);
      const double n = std::sqrt(norm2(x));
      if (u == 0) {
        signal = std::norm(g);
        continue;
      }
      for (std::size_t k = 0; k < m; ++k) interference[k] += mul(g, x[k]) / n;
    }
    out[t] = signal / (norm2(interference) + config.noise_var);
  });
  return out;
}

McReport mc_sinr_outage(const SystemConfig& config, const PortCorrelationProfile& profile,
                        double gamma_th, std::size_t n_trials, std::uint64_t seed,
                        std::size_t workers) {
  if (n_trials < 100) throw InvalidArgument("mc_sinr_outage needs n_trials >= 100");
  if (!(gamma_th >= 0.0)) throw InvalidArgument("gamma_th must be >= 0");
  std::vector<double> sinr = mc_sinr_samples(config, profile, n_trials, seed, workers);
  for (double& s : sinr) s = s <= gamma_th ? 1.0 : 0.0;
  return summarize("sinr_outage", sinr, seed);
}

std::size_t ml_hypothesis_count(std::size_t n_users) {
  const double c = std::round(std::exp(special::log_binomial(2 * n_users, n_users)));
  return static_cast<std::size_t>(c) - 1;
}

namespace {

// All k-subsets of {0..n-1} as bitmasks in lexicographic order.
std::vector<unsigned> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<unsigned> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) == k) out.push_back(mask);
  }
  return out;
}

}  // namespace

McReport mc_ml_bler_small(const SystemConfig& config, const PortCorrelationProfile& profile,
                          std::size_t n_trials, std::uint64_t seed, std::size_t workers) {
  config.validate();
  check_consistent(config, profile);
  const std::size_t u_count = config.n_users;
  const std::size_t m = config.blocklength;
  if (u_count > kMlMaxUsers || m > kMlMaxBlocklength ||
      ml_hypothesis_count(u_count) > kMlMaxHypotheses) {
    throw BudgetExceeded("exhaustive ML search limited to U <= 6, M <= 10 and 1e6 hypotheses");
  }
  if (n_trials < 1) throw InvalidArgument("n_trials must be >= 1");
  std::vector<std::vector<unsigned>> by_size(u_count + 1);
  for (std::size_t k = 1; k <= u_count; ++k) by_size[k] = subsets_of_size(u_count, k);

  const double sc2 = config.sigma_c2();
  const double noise_elem = config.noise_var / static_cast<double>(m);
  std::vector<double> values(n_trials);
  parallel_for(n_trials, workers, [&](std::size_t t) {
    RngStream rng = trial_stream(seed, kTagMl, t);
    std::vector<cplx> gains(u_count);
    std::vector<cplx> tx(u_count * m), alt(u_count * m), noise(m), resid(m);
    for (std::size_t u = 0; u < u_count; ++u) gains[u] = selected_gain(config, profile, rng);
    for (auto& z : tx) z = rng.complex_normal(sc2);
    for (auto& z : alt) z = rng.complex_normal(sc2);
    for (auto& z : noise) z = rng.complex_normal(noise_elem);
    // y - X'g' = eta + sum_j g_{a_j} (c_{a_j} - c'_{b_j}).
    const double truth = norm2(noise);
    double best = truth;
    std::size_t best_size = 0;
    for (std::size_t k = 1; k <= u_count; ++k) {
      for (unsigned a_mask : by_size[k]) {
        for (unsigned b_mask : by_size[k]) {
          std::copy(noise.begin(), noise.end(), resid.begin());
          unsigned a_rest = a_mask;
          unsigned b_rest = b_mask;
          while (a_rest != 0) {
            const auto a = static_cast<std::size_t>(__builtin_ctz(a_rest));
            const auto b = static_cast<std::size_t>(__builtin_ctz(b_rest));
            a_rest &= a_rest - 1;
            b_rest &= b_rest - 1;
            for (std::size_t i = 0; i < m; ++i) {
              resid[i] += mul(gains[a], tx[a * m + i] - alt[b * m + i]);
            }
          }
          const double r = norm2(resid);
          if (r < best) {
            best = r;
            best_size = k;
          }
        }
      }
    }
    values[t] = static_cast<double>(best_size) / static_cast<double>(u_count);
  });
  return summarize("ml_bler", values, seed);
}

}  // namespace fblfas
