#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fblfas/bler.hpp"
#include "fblfas/codeword_stats.hpp"
#include "fblfas/errors.hpp"
#include "fblfas/fas_distribution.hpp"
#include "fblfas/montecarlo.hpp"
#include "fblfas/outage.hpp"

using namespace fblfas;

namespace {

SystemConfig scenario(std::size_t n, double w, std::size_t m, std::size_t u, double snr_db) {
  SystemConfig c;
  c.n_ports = n;
  c.aperture_w = w;
  c.blocklength = m;
  c.n_users = u;
  c.set_snr_db(snr_db);
  return c;
}

double outage_bound(double gamma, const SystemConfig& c) {
  OutageQuery q;
  q.gamma_th = gamma;
  q.config = c;
  return outage_fas(q, port_correlations(c.n_ports, c.aperture_w));
}

// E[min(conditional bound, 1)] over port-selected amplitudes.
double clamped_conditional_average(const SystemConfig& c, std::size_t draws, std::uint64_t seed) {
  const auto g = sample_gfas(c, port_correlations(c.n_ports, c.aperture_w), draws, seed);
  double acc = 0.0;
  for (double x : g) acc += std::min(conditional_bound_raw(x, c), 1.0);
  return acc / static_cast<double>(g.size());
}

}  // namespace

TEST(McReport, SummaryAndJson) {
  const std::vector<double> v{1.0, 2.0, 3.0, 6.0};
  const auto r = summarize("x", v, 5);
  EXPECT_DOUBLE_EQ(r.estimate, 3.0);
  // Sample std sqrt(14/3) over sqrt(4).
  EXPECT_NEAR(r.std_error, std::sqrt(14.0 / 3.0) / 2.0, 1e-15);
  EXPECT_EQ(r.n_trials, 4u);
  const std::vector<double> one{0.7};
  EXPECT_EQ(summarize("y", one, 1).std_error, 0.0);
  const nlohmann::json j = r;
  EXPECT_EQ(j.size(), 5u);
  EXPECT_EQ(j.at("quantity"), "x");
  EXPECT_EQ(j.at("seed"), 5);
  EXPECT_EQ(j.at("n_trials"), 4);
  EXPECT_DOUBLE_EQ(j.at("estimate").get<double>(), 3.0);
  EXPECT_TRUE(j.contains("stderr"));
}

TEST(McCorrelation, SinglePairCoincides) {
  const auto r = mc_codeword_correlation(8, 2, 500, 3);
  EXPECT_EQ(r.rho_bar.estimate, r.rho_max.estimate);
  EXPECT_EQ(r.rho_bar.std_error, r.rho_max.std_error);
}

TEST(McCorrelation, AverageMatchesAnalyticAtLongBlocks) {
  const auto r = mc_codeword_correlation(100, 80, 2000, 11);
  EXPECT_NEAR(r.rho_bar.estimate, std::sqrt(std::acos(-1.0) / 400.0), 0.005);
  EXPECT_NEAR(r.rho_bar.estimate, average_correlation(100), 5.0 * r.rho_bar.std_error + 1e-3);
}

TEST(McCorrelation, ScaleInvariant) {
  const auto a = mc_codeword_correlation(10, 5, 300, 8, 1, 0.1);
  const auto b = mc_codeword_correlation(10, 5, 300, 8, 1, 7.0);
  EXPECT_NEAR(a.rho_bar.estimate, b.rho_bar.estimate, 1e-12);
  EXPECT_NEAR(a.rho_max.estimate, b.rho_max.estimate, 1e-12);
}

// Fig. 2 left panel claims analytic and MC curves overlap at M=10, U=20.
TEST(McCorrelation, MaximumWithinFivePercentAtShortBlocks) {
  const auto r = mc_codeword_correlation(10, 20, 2000, 13);
  const double analytic = max_correlation(10, 20);
  EXPECT_NEAR(r.rho_max.estimate, analytic, 0.05 * analytic)
      << "mc " << r.rho_max.estimate << " analytic " << analytic;
}

TEST(McCorrelation, Errors) {
  EXPECT_THROW(mc_codeword_correlation(10, 1, 10, 1), InvalidArgument);
  EXPECT_THROW(mc_codeword_correlation(10, 3, 0, 1), InvalidArgument);
}

TEST(McGfas, ReproducibleAndConsistent) {
  const auto c = scenario(10, 0.5, 1, 1, 0.0);
  const auto p = port_correlations(10, 0.5);
  const auto grid = uniform_grid(4.0, 41);
  const auto a = mc_gfas(c, p, 20000, 21, grid, 1);
  const auto b = mc_gfas(c, p, 20000, 21, grid, 4);
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_EQ(to_csv(a), to_csv(empirical_distribution(c, p, 20000, 21, grid)));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(a.cdf[i], cdf_exact(grid[i], c, p), 0.015) << grid[i];
  }
}

TEST(McSinr, ZeroThresholdNeverOutage) {
  const auto c = scenario(5, 0.5, 20, 10, 0.0);
  const auto r = mc_sinr_outage(c, port_correlations(5, 0.5), 0.0, 1000, 2);
  EXPECT_EQ(r.estimate, 0.0);
  EXPECT_THROW(mc_sinr_outage(c, port_correlations(5, 0.5), 0.1, 99, 2), InvalidArgument);
}

TEST(McSinr, SingleUserReducesToCdf) {
  const auto c = scenario(5, 0.5, 20, 1, 30.0);
  const auto p = port_correlations(5, 0.5);
  for (double gamma : {300.0, 1000.0, 2000.0}) {
    const auto r = mc_sinr_outage(c, p, gamma, 50000, 17);
    const double ref = cdf_exact(std::sqrt(gamma * c.noise_var), c, p);
    EXPECT_NEAR(r.estimate, ref, 3.0 * r.std_error + 1e-12) << gamma;
    EXPECT_GT(r.estimate, 0.0);
  }
}

// Holds where sigma_eta^2 K gamma dominates the realized interference,
// K = (U - 1)(1 + U rho_bar).
TEST(McSinr, BoundDirectionNoiseLimited) {
  const auto c = scenario(5, 0.5, 20, 10, -30.0);
  const auto p = port_correlations(5, 0.5);
  for (double gamma : {1e-3, 2e-3, 5e-3, 1e-2, 2e-2}) {
    const auto r = mc_sinr_outage(c, p, gamma, 50000, 19);
    EXPECT_GE(outage_bound(gamma, c), r.estimate - 3.0 * r.std_error) << gamma;
  }
}

// The same grid one decade closer to the interference-limited regime.
TEST(McSinr, BoundDirectionAtMinusTwentyDb) {
  const auto c = scenario(5, 0.5, 20, 10, -20.0);
  const auto p = port_correlations(5, 0.5);
  for (double gamma : {1e-3, 2e-3, 5e-3, 1e-2, 2e-2}) {
    const auto r = mc_sinr_outage(c, p, gamma, 50000, 19);
    EXPECT_GE(outage_bound(gamma, c), r.estimate - 3.0 * r.std_error) << gamma;
  }
}

TEST(McSinr, WorkerCountInvariant) {
  const auto c = scenario(4, 1.0, 6, 5, 3.0);
  const auto p = port_correlations(4, 1.0);
  const auto a = mc_sinr_samples(c, p, 3000, 6, 1);
  EXPECT_EQ(a, mc_sinr_samples(c, p, 3000, 6, 3));
  EXPECT_EQ(a, mc_sinr_samples(c, p, 3000, 6, 7));
}

TEST(MlBler, HypothesisCountAndBudget) {
  EXPECT_EQ(ml_hypothesis_count(1), 1u);
  EXPECT_EQ(ml_hypothesis_count(2), 5u);
  EXPECT_EQ(ml_hypothesis_count(3), 19u);
  EXPECT_EQ(ml_hypothesis_count(6), 923u);
  const auto p = port_correlations(2, 0.5);
  EXPECT_THROW(mc_ml_bler_small(scenario(2, 0.5, 8, 7, 0.0), p, 10, 1), BudgetExceeded);
  EXPECT_THROW(mc_ml_bler_small(scenario(2, 0.5, 11, 2, 0.0), p, 10, 1), BudgetExceeded);
  EXPECT_NO_THROW(mc_ml_bler_small(scenario(2, 0.5, 10, 6, 0.0), p, 2, 1));
}

TEST(MlBler, NoiselessLimitIsErrorFree) {
  const auto r = mc_ml_bler_small(scenario(2, 0.5, 8, 2, 80.0), port_correlations(2, 0.5), 2000, 4);
  EXPECT_EQ(r.estimate, 0.0);
}

TEST(MlBler, BelowClampedConditionalBound) {
  for (double snr : {0.0, 3.0, 6.0, 9.0, 12.0}) {
    const auto c = scenario(2, 0.5, 8, 2, snr);
    const auto r = mc_ml_bler_small(c, port_correlations(2, 0.5), 20000, 31);
    const double bound = clamped_conditional_average(c, 100000, 32);
    EXPECT_LE(r.estimate, bound) << snr;
    EXPECT_LE(bound, statistical_bler_fas(c, port_correlations(2, 0.5), DensityForm::exact).value + 1e-3);
  }
}

TEST(MlBler, DecreasingInSnr) {
  double prev = 1.0;
  for (double snr : {-5.0, 0.0, 5.0, 10.0}) {
    const auto r = mc_ml_bler_small(scenario(3, 0.5, 6, 3, snr), port_correlations(3, 0.5), 5000, 9);
    EXPECT_LT(r.estimate, prev) << snr;
    prev = r.estimate;
  }
}

TEST(MlBler, SeedReplayAndWorkers) {
  const auto c = scenario(2, 0.5, 6, 3, 2.0);
  const auto p = port_correlations(2, 0.5);
  const nlohmann::json a = mc_ml_bler_small(c, p, 3000, 77, 1);
  const nlohmann::json b = mc_ml_bler_small(c, p, 3000, 77, 4);
  EXPECT_EQ(a.dump(), b.dump());
  const nlohmann::json d = mc_ml_bler_small(c, p, 3000, 78, 1);
  EXPECT_NE(a.dump(), d.dump());
}

TEST(McCorrelation, WorkerCountInvariant) {
  const nlohmann::json a = mc_codeword_correlation(20, 10, 400, 5, 1).rho_max;
  const nlohmann::json b = mc_codeword_correlation(20, 10, 400, 5, 4).rho_max;
  EXPECT_EQ(a.dump(), b.dump());
}
