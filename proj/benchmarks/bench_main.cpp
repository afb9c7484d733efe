#include <benchmark/benchmark.h>

#include "fblfas/bler.hpp"
#include "fblfas/codeword_stats.hpp"
#include "fblfas/fas_distribution.hpp"
#include "fblfas/montecarlo.hpp"
#include "fblfas/outage.hpp"
#include "fblfas/special_functions.hpp"

namespace {

fblfas::SystemConfig config_with_ports(std::size_t n) {
  fblfas::SystemConfig c;
  c.n_ports = n;
  c.blocklength = 5;
  c.n_users = 10;
  c.set_snr_db(12.0);
  return c;
}

void BM_MarcumQ1(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  double b = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fblfas::special::marcum_q1(a, a + b));
    b = b > 5.0 ? 0.5 : b + 0.37;
  }
}
BENCHMARK(BM_MarcumQ1)->Arg(1)->Arg(10)->Arg(40);

void BM_CdfExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = config_with_ports(n);
  const auto profile = fblfas::port_correlations(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(fblfas::cdf_exact(1.0, c, profile));
}
BENCHMARK(BM_CdfExact)->Arg(5)->Arg(50)->Arg(500);

void BM_PdfMvti(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = config_with_ports(n);
  const auto profile = fblfas::port_correlations(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(fblfas::pdf_mvti(1.0, c, profile));
}
BENCHMARK(BM_PdfMvti)->Arg(5)->Arg(50)->Arg(500);

void BM_StatisticalBler(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = config_with_ports(n);
  const auto profile = fblfas::port_correlations(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(fblfas::statistical_bler_fas(c, profile).value);
}
BENCHMARK(BM_StatisticalBler)->Arg(5)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_OutageFas(benchmark::State& state) {
  fblfas::OutageQuery q;
  q.config = config_with_ports(10);
  q.config.blocklength = 20;
  q.config.set_snr_db(-30.0);
  const auto profile = fblfas::port_correlations(10, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(fblfas::outage_fas(q, profile));
}
BENCHMARK(BM_OutageFas);

void BM_McCorrelation(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fblfas::mc_codeword_correlation(m, 80, 100, 1).rho_max.estimate);
  }
}
BENCHMARK(BM_McCorrelation)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
