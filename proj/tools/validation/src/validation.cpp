#include "fblfas_tools/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fblfas/bler.hpp"
#include "fblfas/codeword_stats.hpp"
#include "fblfas/errors.hpp"
#include "fblfas/experiments.hpp"
#include "fblfas/fas_distribution.hpp"
#include "fblfas/montecarlo.hpp"
#include "fblfas/outage.hpp"
#include "fblfas/quadrature.hpp"
#include "fblfas/special_functions.hpp"

namespace fblfas::validation {

namespace {

constexpr std::size_t kFig2Blocklengths[] = {10, 20, 50, 100};
constexpr std::size_t kFig2Users[] = {20, 40, 60, 80};

struct Names {
  int id;
  const char* name;
};

constexpr Names kChecks[] = {
    {1, "fig2-average"},   {2, "fig2-maximum"}, {3, "fig3-distribution"},
    {4, "reductions"},     {5, "bound-direction"}, {6, "fig7-floor"},
    {7, "fig8-ordering"},  {8, "properties"},
};

SystemConfig scenario(std::size_t n, double w, std::size_t m, std::size_t u, double snr_db) {
  SystemConfig c;
  c.n_ports = n;
  c.aperture_w = w;
  c.blocklength = m;
  c.n_users = u;
  c.set_snr_db(snr_db);
  return c;
}

// Collects failures and a short measurement summary.
class Log {
 public:
  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += s;
  }
  void fail(const std::string& s) {
    ok_ = false;
    if (failures_ < 6) note("FAILED " + s);
    ++failures_;
  }
  void expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
  bool ok() const { return ok_; }
  std::string text() const {
    if (failures_ > 6) return notes_ + "; ... " + std::to_string(failures_ - 6) + " more failures";
    return notes_;
  }

 private:
  bool ok_ = true;
  int failures_ = 0;
  std::string notes_;
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

struct Fig2Grid {
  // [m index][u index]
  std::vector<std::vector<CorrelationReports>> reports;
};

Fig2Grid run_fig2(const Options& o) {
  Fig2Grid g;
  for (std::size_t m : kFig2Blocklengths) {
    std::vector<CorrelationReports> row;
    for (std::size_t u : kFig2Users) {
      row.push_back(mc_codeword_correlation(m, u, kFig2Trials, o.seed + 1000 * m + u, o.workers));
    }
    g.reports.push_back(std::move(row));
  }
  return g;
}

void check_fig2_average(const Options& o, Log& log) {
  const Fig2Grid g = run_fig2(o);
  double worst = 0.0;
  for (std::size_t i = 0; i < std::size(kFig2Blocklengths); ++i) {
    const std::size_t m = kFig2Blocklengths[i];
    const double analytic = average_correlation(m);
    for (std::size_t j = 0; j < std::size(kFig2Users); ++j) {
      const McReport& r = g.reports[i][j].rho_bar;
      const double gap = std::abs(analytic - r.estimate);
      const double limit = std::max(kRhoBarAbsTol, kRhoBarStderrMultiple * r.std_error);
      worst = std::max(worst, gap / limit);
      log.expect(gap <= limit, "M=" + std::to_string(m) + " U=" + std::to_string(kFig2Users[j]) +
                                   " |gap| " + fmt(gap) + " > " + fmt(limit));
    }
  }
  log.note("worst gap/limit " + fmt(worst, 3));
}

void check_fig2_maximum(const Options& o, Log& log) {
  const Fig2Grid g = run_fig2(o);
  double worst = 0.0;
  for (std::size_t j = 0; j < std::size(kFig2Users); ++j) {
    const std::size_t u = kFig2Users[j];
    double prev = INFINITY;
    std::string curve;
    for (std::size_t i = 0; i < std::size(kFig2Blocklengths); ++i) {
      const std::size_t m = kFig2Blocklengths[i];
      const double analytic = max_correlation(m, u);
      const double rel = std::abs(analytic - g.reports[i][j].rho_max.estimate) / analytic;
      worst = std::max(worst, rel);
      curve += (curve.empty() ? "" : "/") + fmt(100 * rel, 3);
      log.expect(rel <= kRhoMaxRelTol, "M=" + std::to_string(m) + " U=" + std::to_string(u) +
                                           " rel " + fmt(rel, 3));
      log.expect(rel <= prev, "U=" + std::to_string(u) + " error not improving at M=" +
                                  std::to_string(m));
      prev = rel;
    }
    log.note("U=" + std::to_string(u) + " rel% " + curve);
  }
  log.note("worst " + fmt(100 * worst, 3) + "%");
}

void check_fig3(const Options& o, Log& log) {
  const auto c = scenario(10, 0.5, 1, 1, 0.0);
  const auto p = port_correlations(10, 0.5);
  const auto grid = uniform_grid(4.0, 401);
  const auto exact = evaluate_distribution(c, p, DistMethod::exact, grid, {}, o.workers);
  const auto mvti = evaluate_distribution(c, p, DistMethod::mvti, grid, {}, o.workers);
  const auto emp = empirical_distribution(c, p, kFig3Samples, o.seed, grid, o.workers);
  double sup_emp = 0.0;
  double sup_mvti = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sup_emp = std::max(sup_emp, std::abs(exact.cdf[i] - emp.cdf[i]));
    sup_mvti = std::max(sup_mvti, std::abs(exact.cdf[i] - mvti.cdf[i]));
  }
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  spec.abs_tol = 1e-12;
  const double r_top = std::sqrt(c.channel_var * std::log(10.0 * 1e16));
  const double mass = quad::integrate_or_throw(
      [&](double r) { return pdf_exact(r, c, p); }, 0.0, r_top, spec, "pdf mass");
  log.expect(sup_emp <= kFig3EmpiricalSupTol, "empirical sup " + fmt(sup_emp));
  log.expect(sup_mvti <= kFig3MvtiSupTol, "mvti sup " + fmt(sup_mvti));
  log.expect(std::abs(mass - 1.0) <= kFig3PdfMassTol, "pdf mass " + fmt(mass, 12));
  log.note("sup|exact-mc| " + fmt(sup_emp) + ", sup|mvti-exact| " + fmt(sup_mvti) +
           ", |mass-1| " + fmt(std::abs(mass - 1.0), 3));
}

void check_reductions(Log& log) {
  double worst_rayleigh = 0.0;
  for (double var : {1.0, 2.0}) {
    const auto c = scenario(1, 0.5, 1, 1, 0.0);
    auto cv = c;
    cv.channel_var = var;
    const auto p = port_correlations(1, 0.5);
    for (double r : uniform_grid(4.0 * std::sqrt(var), kReductionGridPoints)) {
      const double ref = -std::expm1(-r * r / var);
      worst_rayleigh = std::max(worst_rayleigh, std::abs(cdf_exact(r, cv, p) - ref));
    }
  }
  log.expect(worst_rayleigh <= kRayleighReductionTol, "N=1 gap " + fmt(worst_rayleigh));

  const quad::QuadratureSpec q;
  double worst_ratio = 0.0;
  for (std::size_t n : {2, 5, 10}) {
    std::vector<double> mu(n, 0.0);
    mu[0] = 1.0;
    const auto p = profile_from_mu(mu);
    const auto c = scenario(n, 0.5, 1, 1, 0.0);
    for (double r : uniform_grid(4.0, kReductionGridPoints)) {
      const double ref = std::pow(-std::expm1(-r * r), static_cast<double>(n));
      const double tol = 4.0 * std::max(q.abs_tol, q.rel_tol * ref);
      worst_ratio = std::max(worst_ratio, std::abs(cdf_exact(r, c, p, q) - ref) / tol);
    }
  }
  log.expect(worst_ratio <= 1.0, "independent-ports gap/tol " + fmt(worst_ratio));
  log.note("N=1 max gap " + fmt(worst_rayleigh, 3) + ", mu=0 worst gap/tol " + fmt(worst_ratio, 3));
}

void check_bound_direction(const Options& o, Log& log) {
  struct Case {
    std::size_t u, m, n;
  };
  double tightest = INFINITY;
  for (const Case k : {Case{2, 8, 2}, Case{3, 6, 3}, Case{4, 8, 2}}) {
    for (double snr : {0.0, 6.0, 12.0}) {
      const auto c = scenario(k.n, 0.5, k.m, k.u, snr);
      const auto p = port_correlations(k.n, 0.5);
      const auto ml = mc_ml_bler_small(c, p, kMlTrials, o.seed + 17, o.workers);
      const double bound = statistical_bler_fas(c, p).value;
      tightest = std::min(tightest, bound - ml.estimate);
      log.expect(ml.estimate <= bound, "U=" + std::to_string(k.u) + " M=" + std::to_string(k.m) +
                                           " N=" + std::to_string(k.n) + " " + fmt(snr) +
                                           " dB: ml " + fmt(ml.estimate) + " > bound " +
                                           fmt(bound));
      log.note("(" + std::to_string(k.u) + "," + std::to_string(k.m) + "," +
               std::to_string(k.n) + ")@" + fmt(snr) + "dB ml " + fmt(ml.estimate, 3) +
               " <= " + fmt(bound, 3));
    }
  }
  log.note("smallest margin " + fmt(tightest, 3));
}

void check_fig7(Log& log) {
  const double gamma = 1e-3;
  const std::size_t u = 20;
  const double plateau = -std::expm1(-gamma * std::numbers::pi * (u - 1) / 4.0);
  const auto c = scenario(10, 0.5, 5, u, 60.0);
  const double mrc = outage_mrc(gamma, 1, u, c.channel_var, c.noise_var);
  OutageQuery q;
  q.gamma_th = gamma;
  q.config = c;
  const double fas = outage_fas(q, port_correlations(10, 0.5));
  const double rel = std::abs(mrc - plateau) / plateau;
  log.expect(rel <= kFloorRelTol, "MRC floor rel " + fmt(rel));
  log.expect(fas < kNoFloorCeiling, "FAS outage " + fmt(fas));
  log.note("MRC L=1 " + fmt(mrc) + " vs plateau " + fmt(plateau) + " (rel " + fmt(rel, 3) +
           "), FAS N=10 " + fmt(fas, 3));
}

void check_fig8(Log& log) {
  const double gamma = 1e-4;
  int ordered = 0;
  for (std::size_t u = 10; u <= 100; ++u) {
    double prev = INFINITY;
    bool ok = true;
    for (std::size_t n : {5, 10, 25, 50}) {
      OutageQuery q;
      q.gamma_th = gamma;
      q.config = scenario(n, 0.5, 5, u, -35.0);
      const double v = outage_fas(q, port_correlations(n, 0.5));
      if (!(v < prev)) {
        ok = false;
        log.fail("U=" + std::to_string(u) + " N=" + std::to_string(n) + " not decreasing");
      }
      prev = v;
    }
    ordered += ok ? 1 : 0;
  }
  log.note("FAS ordered for " + std::to_string(ordered) + "/91 user counts");
  const auto base = scenario(1, 0.5, 5, 10, -35.0);
  for (std::size_t l : {1, 3, 5, 7}) {
    double lo = INFINITY;
    double hi = 0.0;
    for (std::size_t u = 10; u <= 100; ++u) {
      const double v = outage_mrc(gamma, l, u, base.channel_var, base.noise_var);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double spread = (hi - lo) / lo;
    const std::string what = "MRC L=" + std::to_string(l) + " spread " + fmt(100 * spread, 3) + "%";
    if (spread <= kMrcFlatnessRelTol) {
      log.note(what);
    } else {
      log.fail(what);
    }
  }
}

// Independent Rician-tail quadrature using the standard library Bessel function.
double marcum_reference(double a, double b) {
  if (b == 0.0) return 1.0;
  auto density = [a](double x) {
    const double z = a * x;
    const double i0s = std::cyl_bessel_i(0.0, z) * std::exp(-z);
    return x * std::exp(-0.5 * (x - a) * (x - a)) * i0s;
  };
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-14;
  spec.abs_tol = 1e-16;
  spec.max_depth = 50;
  auto piece = [&](double lo, double hi) {
    if (lo < a && a < hi) {
      return quad::integrate(density, lo, a, spec).value + quad::integrate(density, a, hi, spec).value;
    }
    return quad::integrate(density, lo, hi, spec).value;
  };
  if (b < a) return 1.0 - piece(0.0, b);
  return piece(b, std::max(a, b) + 40.0);
}

void check_properties(const Options& o, Log& log) {
  // Marcum Q1 oracle grid.
  double worst_marcum = 0.0;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double a = 0.5 * i;
      const double b = 0.5 * j;
      worst_marcum = std::max(worst_marcum, std::abs(special::marcum_q1(a, b) - marcum_reference(a, b)));
    }
  }
  log.expect(worst_marcum <= kMarcumOracleTol, "Marcum grid gap " + fmt(worst_marcum));

  // Gumbel moments by quadrature.
  double worst_moment = 0.0;
  for (auto [m, t] : {std::pair<std::size_t, std::size_t>{10, 190}, {50, 3160}, {100, 1770}, {20, 45}}) {
    const GumbelParams g = gumbel_params(m, t);
    quad::QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    spec.abs_tol = 1e-15;
    const double lo = g.location - 20.0 * g.scale;
    const double hi = g.location + 80.0 * g.scale;
    auto moment = [&](int k) {
      return quad::integrate(
                 [&](double z) { return std::pow(z - g.location, k) * gumbel_pdf(z, g.location, g.scale); },
                 lo, hi, spec)
          .value;
    };
    const double mean = g.location + moment(1);
    const double var = moment(2) - moment(1) * moment(1);
    const double mean_ref = g.location + std::numbers::egamma * g.scale;
    const double var_ref = std::numbers::pi * std::numbers::pi * g.scale * g.scale / 6.0;
    worst_moment = std::max({worst_moment, std::abs(mean - mean_ref) / mean_ref,
                             std::abs(var - var_ref) / var_ref});
  }
  log.expect(worst_moment <= kGumbelMomentTol, "Gumbel moment rel gap " + fmt(worst_moment));

  // Monotonicity of every bound.
  int monotone_failures = 0;
  auto mono = [&](const std::string& what, const std::vector<double>& v, bool decreasing) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      const bool ok = decreasing ? v[i] <= v[i - 1] : v[i] >= v[i - 1];
      if (!ok) {
        ++monotone_failures;
        log.fail(what + " at index " + std::to_string(i));
        return;
      }
    }
  };
  std::vector<double> snr_grid;
  for (int i = 0; i < 30; ++i) snr_grid.push_back(-10.0 + i);
  {
    std::vector<double> cond, stat, l1, l3, rc;
    const auto p10 = port_correlations(10, 0.5);
    for (double s : snr_grid) {
      const auto c = scenario(10, 0.5, 5, 10, s);
      cond.push_back(conditional_bound_raw(1.5, c));
      stat.push_back(statistical_bler_fas(c, p10).raw_value);
      l1.push_back(bler_l_antenna(1, c).raw_value);
      l3.push_back(bler_l_antenna(3, c).raw_value);
      rc.push_back(random_coding_bler(5, 10, c.snr()));
    }
    mono("conditional BLER vs SNR", cond, true);
    mono("statistical BLER vs SNR", stat, true);
    mono("L=1 BLER vs SNR", l1, true);
    mono("L=3 BLER vs SNR", l3, true);
    mono("random-coding BLER vs SNR", rc, true);
    std::vector<double> by_g;
    const auto c = scenario(10, 0.5, 5, 10, 5.0);
    for (int i = 0; i <= 60; ++i) by_g.push_back(conditional_bound_raw(0.1 * i, c));
    mono("conditional BLER vs |g|", by_g, true);
  }
  {
    auto op = [](double gamma, const SystemConfig& c, CorrelationMode mode) {
      OutageQuery q;
      q.gamma_th = gamma;
      q.config = c;
      q.correlation_mode = mode;
      return outage_fas(q, port_correlations(c.n_ports, c.aperture_w));
    };
    std::vector<double> by_gamma, by_u, by_n, by_snr, mrc_snr;
    const auto base = scenario(10, 0.5, 5, 20, -35.0);
    for (double g : {1e-5, 3e-5, 1e-4, 3e-4, 1e-3, 3e-3}) by_gamma.push_back(op(g, base, CorrelationMode::mean));
    for (std::size_t u : {3, 5, 10, 20, 40, 80}) {
      auto c = base;
      c.n_users = u;
      by_u.push_back(op(1e-4, c, CorrelationMode::mean));
    }
    for (std::size_t n : {1, 2, 5, 10, 25, 50}) {
      auto c = base;
      c.n_ports = n;
      by_n.push_back(op(1e-4, c, CorrelationMode::mean));
    }
    for (int i = 0; i < 30; ++i) {
      auto c = base;
      c.set_snr_db(-50.0 + 3.0 * i);
      by_snr.push_back(op(1e-3, c, CorrelationMode::mean));
      mrc_snr.push_back(outage_mrc(1e-3, 3, 20, c.channel_var, c.noise_var));
      if (op(1e-3, c, CorrelationMode::max) < op(1e-3, c, CorrelationMode::mean)) {
        ++monotone_failures;
        log.fail("max mode below mean mode at " + fmt(-50.0 + 3.0 * i) + " dB");
      }
    }
    mono("FAS outage vs gamma", by_gamma, false);
    mono("FAS outage vs U", by_u, false);
    mono("FAS outage vs N", by_n, true);
    mono("FAS outage vs SNR", by_snr, true);
    mono("MRC outage vs SNR", mrc_snr, true);
  }
  {
    std::vector<double> by_m;
    for (std::size_t m : {5, 10, 20, 50, 100}) by_m.push_back(max_correlation_cdf(0.3, m, 190));
    mono("max-correlation CDF vs M", by_m, false);
    const auto c = scenario(10, 0.5, 1, 1, 0.0);
    const auto p = port_correlations(10, 0.5);
    std::vector<double> cdf;
    for (double r : uniform_grid(5.0, 51)) cdf.push_back(cdf_exact(r, c, p));
    mono("exact CDF vs r", cdf, false);
  }

  // Byte-exact reproducibility of every MC entry point across worker counts.
  int repro_failures = 0;
  auto same = [&](const std::string& what, const std::string& a, const std::string& b) {
    if (a != b) {
      ++repro_failures;
      log.fail(what + " not reproducible");
    }
  };
  {
    using nlohmann::json;
    const auto corr = [&](std::size_t w) {
      const auto r = mc_codeword_correlation(20, 10, 300, o.seed, w);
      return json{{"a", r.rho_bar}, {"b", r.rho_max}}.dump();
    };
    same("mc_codeword_correlation", corr(1), corr(3));
    const auto c = scenario(6, 1.0, 6, 3, 3.0);
    const auto p = port_correlations(6, 1.0);
    same("mc_gfas", to_csv(mc_gfas(c, p, 4000, o.seed, {}, 1)), to_csv(mc_gfas(c, p, 4000, o.seed, {}, 3)));
    same("mc_sinr_outage", json(mc_sinr_outage(c, p, 0.3, 2000, o.seed, 1)).dump(),
         json(mc_sinr_outage(c, p, 0.3, 2000, o.seed, 3)).dump());
    same("mc_ml_bler_small", json(mc_ml_bler_small(c, p, 500, o.seed, 1)).dump(),
         json(mc_ml_bler_small(c, p, 500, o.seed, 3)).dump());
    auto spec = preset("fig2", o.seed, 40);
    same("run_sweep", to_csv(run_sweep(spec, 1)), to_csv(run_sweep(spec, 3)));
    same("run_sweep replay", to_json_envelope(run_sweep(spec, 1)).dump(),
         to_json_envelope(run_sweep(spec, 1)).dump());
  }
  log.note("Marcum gap " + fmt(worst_marcum, 3) + ", Gumbel rel gap " + fmt(worst_moment, 3) +
           ", monotonicity failures " + std::to_string(monotone_failures) +
           ", reproducibility failures " + std::to_string(repro_failures));
}

double budget_for(int id) {
  switch (id) {
    case 1: return kBudgetFig2Right;
    case 2: return kBudgetFig2Left;
    case 3: return kBudgetFig3;
    case 5: return kBudgetBoundDirection;
    default: return INFINITY;
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v{"all"};
    for (const auto& c : kChecks) v.emplace_back(c.name);
    return v;
  }();
  return names;
}

std::vector<int> select_suite(std::string_view suite) {
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8};
  for (const auto& c : kChecks) {
    if (suite == c.name || suite == std::to_string(c.id)) return {c.id};
  }
  throw InvalidArgument("unknown validation suite: " + std::string(suite));
}

CheckResult run_check(int id, const Options& options) {
  CheckResult out;
  out.id = id;
  for (const auto& c : kChecks) {
    if (c.id == id) out.name = c.name;
  }
  if (out.name.empty()) throw InvalidArgument("unknown criterion id " + std::to_string(id));
  Log log;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: check_fig2_average(options, log); break;
      case 2: check_fig2_maximum(options, log); break;
      case 3: check_fig3(options, log); break;
      case 4: check_reductions(log); break;
      case 5: check_bound_direction(options, log); break;
      case 6: check_fig7(log); break;
      case 7: check_fig8(log); break;
      case 8: check_properties(options, log); break;
    }
  } catch (const std::exception& e) {
    log.fail(std::string("exception: ") + e.what());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double budget = budget_for(id);
  log.expect(out.seconds <= budget, "runtime " + fmt(out.seconds, 3) + " s > " + fmt(budget) + " s");
  out.passed = log.ok();
  out.detail = log.text();
  return out;
}

std::vector<CheckResult> run_suite(std::string_view suite, const Options& options) {
  std::vector<CheckResult> out;
  for (int id : select_suite(suite)) out.push_back(run_check(id, options));
  return out;
}

std::string format_line(const CheckResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << " (" << std::fixed
     << std::setprecision(1) << r.seconds << " s): " << r.detail;
  return os.str();
}

}  // namespace fblfas::validation
