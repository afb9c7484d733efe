#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fblfas/errors.hpp"
#include "fblfas/fas_distribution.hpp"
#include "oracles.hpp"

using namespace fblfas;

namespace {

SystemConfig cfg(std::size_t n, double w, double var = 1.0) {
  SystemConfig c;
  c.n_ports = n;
  c.aperture_w = w;
  c.channel_var = var;
  return c;
}

double rayleigh_cdf(double r, double var) { return -std::expm1(-r * r / var); }
double rayleigh_pdf(double r, double var) { return 2.0 * r / var * std::exp(-r * r / var); }

}  // namespace

TEST(CdfExact, SinglePortIsRayleigh) {
  for (double var : {1.0, 2.5}) {
    const auto c = cfg(1, 0.5, var);
    const auto p = port_correlations(1, 0.5);
    for (double r : uniform_grid(4.0 * std::sqrt(var), 50)) {
      EXPECT_NEAR(cdf_exact(r, c, p), rayleigh_cdf(r, var), 1e-10) << r;
      EXPECT_NEAR(pdf_exact(r, c, p), rayleigh_pdf(r, var), 1e-10) << r;
      EXPECT_DOUBLE_EQ(cdf_mvti(r, c, p), cdf_exact(r, c, p));
      EXPECT_DOUBLE_EQ(pdf_mvti(r, c, p), pdf_exact(r, c, p));
    }
  }
}

TEST(CdfExact, UncorrelatedPortsGiveIndependentProduct) {
  const auto c = cfg(5, 0.5);
  const auto p = profile_from_mu({1.0, 0.0, 0.0, 0.0, 0.0});
  const quad::QuadratureSpec q;
  for (double r : uniform_grid(4.0, 50)) {
    const double ref = std::pow(rayleigh_cdf(r, 1.0), 5);
    EXPECT_NEAR(cdf_exact(r, c, p, q), ref, std::max(q.abs_tol, q.rel_tol * ref) * 4) << r;
  }
}

TEST(CdfExact, NegativeMuMatchesPositive) {
  const auto c = cfg(3, 0.5);
  const auto pos = profile_from_mu({1.0, 0.4, 0.7});
  const auto neg = profile_from_mu({1.0, -0.4, -0.7});
  for (double r : {0.3, 1.1, 2.2}) {
    EXPECT_EQ(cdf_exact(r, c, pos), cdf_exact(r, c, neg));
    EXPECT_EQ(pdf_mvti(r, c, pos), pdf_mvti(r, c, neg));
  }
}

TEST(CdfExact, DegeneratePortsAreDropped) {
  const auto c3 = cfg(3, 0.5);
  const auto c2 = cfg(2, 0.5);
  const auto with = profile_from_mu({1.0, 0.5, 1.0});
  const auto without = profile_from_mu({1.0, 0.5});
  for (double r : {0.2, 0.9, 1.7, 3.0}) {
    EXPECT_EQ(cdf_exact(r, c3, with), cdf_exact(r, c2, without));
    EXPECT_EQ(pdf_exact(r, c3, with), pdf_exact(r, c2, without));
  }
}

TEST(CdfExact, Invariants) {
  for (std::size_t n : {2, 10, 50}) {
    for (double w : {0.5, 2.0}) {
      const auto c = cfg(n, w);
      const auto p = port_correlations(n, w);
      EXPECT_EQ(cdf_exact(0.0, c, p), 0.0);
      double prev = 0.0;
      for (double r : uniform_grid(5.0, 26)) {
        const double v = cdf_exact(r, c, p);
        EXPECT_GE(v, prev) << n << ' ' << w << ' ' << r;
        EXPECT_LE(v, 1.0);
        prev = v;
      }
      EXPECT_GT(cdf_exact(8.0, c, p), 1.0 - 1e-4);
    }
  }
  EXPECT_THROW(cdf_exact(-1.0, cfg(2, 0.5), port_correlations(2, 0.5)), InvalidArgument);
  EXPECT_THROW(cdf_exact(1.0, cfg(3, 0.5), port_correlations(2, 0.5)), InvalidArgument);
}

TEST(CdfExact, StochasticDominanceOnNestedPorts) {
  const std::vector<double> pos{0.0, 0.07, 0.19, 0.26, 0.41, 0.5, 0.66, 0.8};
  for (double r : {0.4, 1.0, 1.6, 2.4}) {
    double prev = 1.0;
    for (std::size_t n = 1; n <= pos.size(); ++n) {
      const auto p = profile_from_positions(std::span(pos).first(n));
      const double v = cdf_exact(r, cfg(n, 0.5), p);
      EXPECT_LE(v, prev + 1e-12) << n << ' ' << r;
      prev = v;
    }
  }
}

TEST(PdfExact, IntegratesToOne) {
  const auto c = cfg(5, 0.5);
  const auto p = port_correlations(5, 0.5);
  const double total =
      oracle::integrate([&](double r) { return pdf_exact(r, c, p); }, 0.0, 7.0, 1e-12);
  EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(PdfExact, MatchesFiniteDifferenceOfCdf) {
  const auto c = cfg(4, 1.0);
  const auto p = port_correlations(4, 1.0);
  quad::QuadratureSpec tight;
  tight.rel_tol = 1e-13;
  tight.abs_tol = 1e-15;
  const double h = 1e-4;
  for (double r = 0.1; r < 3.5; r += 0.2) {
    const double fd = (cdf_exact(r + h, c, p, tight) - cdf_exact(r - h, c, p, tight)) / (2 * h);
    EXPECT_NEAR(pdf_exact(r, c, p), fd, 1e-5) << r;
  }
}

TEST(FrozenPoint, Limits) {
  EXPECT_EQ(frozen_point(0.0), 0.0);
  EXPECT_NEAR(frozen_point(1e-6), 5e-7, 1e-12);
  EXPECT_LT(std::abs(frozen_point(50.0) - 1.0), 1e-20 + 50.0 * std::exp(-50.0));
  EXPECT_NEAR(frozen_point(2.0), (1 - 3 * std::exp(-2.0)) / (1 - std::exp(-2.0)), 1e-15);
  // Series branch and closed form agree at the switch.
  for (double a : {0.999e-3, 1.001e-3}) {
    EXPECT_NEAR(frozen_point(a), (1 - (1 + a) * std::exp(-a)) / -std::expm1(-a), 1e-12);
  }
  EXPECT_THROW(frozen_point(-1.0), InvalidArgument);
}

TEST(Mvti, CloseToExactAtTenPorts) {
  const auto c = cfg(10, 0.5);
  const auto p = port_correlations(10, 0.5);
  double sup = 0.0;
  for (double r : uniform_grid(4.0, 81)) {
    sup = std::max(sup, std::abs(cdf_mvti(r, c, p) - cdf_exact(r, c, p)));
  }
  EXPECT_LE(sup, 0.03);
  RecordProperty("sup_gap", std::to_string(sup));
}

TEST(Mvti, LargeRadiusLimitAndNormalization) {
  const auto c = cfg(5, 0.5);
  const auto p = port_correlations(5, 0.5);
  EXPECT_NEAR(cdf_mvti(8.0, c, p), 1.0, 1e-6);
  EXPECT_EQ(cdf_mvti(0.0, c, p), 0.0);
  const double total =
      oracle::integrate([&](double r) { return pdf_mvti(r, c, p); }, 0.0, 8.0, 1e-10);
  EXPECT_NEAR(total, 1.0, 0.05);
  for (double r : uniform_grid(6.0, 61)) EXPECT_GE(pdf_mvti(r, c, p), 0.0);
}

TEST(Empirical, SingleSampleIsAStep) {
  const auto c = cfg(3, 0.5);
  const auto p = port_correlations(3, 0.5);
  const auto draw = sample_gfas(c, p, 1, 9);
  const std::vector<double> grid{0.0, draw[0] * 0.999, draw[0], draw[0] * 1.5};
  const auto e = empirical_distribution(c, p, 1, 9, grid);
  EXPECT_EQ(e.cdf, (std::vector<double>{0.0, 0.0, 1.0, 1.0}));
  EXPECT_EQ(e.method, DistMethod::empirical);
}

TEST(Empirical, SinglePortKolmogorovSmirnov) {
  auto s = sample_gfas(cfg(1, 0.5), port_correlations(1, 0.5), 100000, 17);
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = rayleigh_cdf(s[i], 1.0);
    ks = std::max({ks, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  EXPECT_LT(ks, 0.006);
}

TEST(Empirical, ExactCdfAgreesAtTenPorts) {
  const auto c = cfg(10, 0.5);
  const auto p = port_correlations(10, 0.5);
  const auto grid = uniform_grid(4.0, 201);
  const auto e = empirical_distribution(c, p, 100000, 23, grid);
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sup = std::max(sup, std::abs(e.cdf[i] - cdf_exact(grid[i], c, p)));
  }
  EXPECT_LT(sup, 0.01);
  // Histogram density tracks the exact density in the bulk.
  for (std::size_t i = 40; i < 120; i += 10) {
    EXPECT_NEAR(e.pdf[i], pdf_exact(grid[i], c, p), 0.08) << grid[i];
  }
}

TEST(Empirical, ReproducibleAcrossWorkerCounts) {
  const auto c = cfg(6, 1.0);
  const auto p = port_correlations(6, 1.0);
  const auto a = sample_gfas(c, p, 5000, 77, 1);
  const auto b = sample_gfas(c, p, 5000, 77, 3);
  const auto d = sample_gfas(c, p, 5000, 77, 8);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, d);
  EXPECT_NE(a, sample_gfas(c, p, 5000, 78, 1));
  EXPECT_EQ(to_csv(empirical_distribution(c, p, 500, 4)), to_csv(empirical_distribution(c, p, 500, 4)));
}

TEST(Empirical, FreedmanDiaconisWidth) {
  const std::vector<double> s{0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0};
  // IQR with linear interpolation: q75 = 5.25, q25 = 1.75.
  EXPECT_NEAR(freedman_diaconis_width(s), 2.0 * 3.5 / 2.0, 1e-12);
  const std::vector<double> same{2.0, 2.0};
  EXPECT_EQ(freedman_diaconis_width(same), 1.0);
}

TEST(DistributionEval, CsvAndGrid) {
  const auto c = cfg(10, 0.5);
  const auto p = port_correlations(10, 0.5);
  const auto grid = uniform_grid(4.0, 200);
  ASSERT_EQ(grid.size(), 200u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_EQ(grid.back(), 4.0);
  const auto e = evaluate_distribution(c, p, DistMethod::mvti, grid);
  const std::string csv = to_csv(e);
  EXPECT_EQ(csv.rfind("r,cdf,pdf,method\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 201);
  EXPECT_EQ(e.config_hash, config_hash(c, p));
  EXPECT_NE(e.config_hash, config_hash(cfg(10, 0.6), port_correlations(10, 0.6)));
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_GE(e.cdf[i], e.cdf[i - 1]);
  const auto threaded = evaluate_distribution(c, p, DistMethod::mvti, grid, {}, 4);
  EXPECT_EQ(to_csv(threaded), csv);
  EXPECT_THROW(evaluate_distribution(c, p, DistMethod::empirical, grid), InvalidArgument);
}

TEST(SecondMoment, RayleighAndMonteCarlo) {
  EXPECT_NEAR(second_moment(cfg(1, 0.5, 2.0), port_correlations(1, 0.5)), 2.0, 1e-7);
  const auto c = cfg(5, 0.5);
  const auto p = port_correlations(5, 0.5);
  const auto s = sample_gfas(c, p, 200000, 5);
  double m2 = 0.0;
  for (double x : s) m2 += x * x;
  m2 /= static_cast<double>(s.size());
  EXPECT_NEAR(second_moment(c, p, DistMethod::exact), m2, 0.01 * m2);
}
