#include "fblfas_tools/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fblfas/bler.hpp"
#include "fblfas/codeword_stats.hpp"
#include "fblfas/errors.hpp"
#include "fblfas/experiments.hpp"
#include "fblfas/fas_distribution.hpp"
#include "fblfas/montecarlo.hpp"
#include "fblfas/outage.hpp"
#include "fblfas/text_format.hpp"
#include "fblfas_tools/validation.hpp"

namespace fblfas::cli {

namespace {

using nlohmann::json;

// Flat JSON object of flag names (dashes or underscores) applied to the
// selected subcommand. CLI11 lets explicit flags win over these values.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      input >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<std::string> parents;
    for (const CLI::App* sub : root_->get_subcommands()) parents.push_back(sub->get_name());
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      std::replace(item.name.begin(), item.name.end(), '_', '-');
      auto push = [&](const json& v) {
        item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      };
      if (value.is_array()) {
        for (const auto& v : value) push(v);
      } else {
        push(value);
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  const CLI::App* root_;
};

struct SystemFlags {
  std::size_t n_ports = 1;
  double aperture_w = 0.5;
  double sigma2 = 1.0;
  double noise_var = 1.0;
  std::vector<double> snr_db;
  std::size_t blocklength = 1;
  std::size_t n_users = 1;
  double codeword_var = 0.0;
  const CLI::Option* noise_opt = nullptr;

  SystemConfig config() const {
    SystemConfig c;
    c.n_ports = n_ports;
    c.aperture_w = aperture_w;
    c.channel_var = sigma2;
    c.noise_var = noise_var;
    c.blocklength = blocklength;
    c.n_users = n_users;
    if (codeword_var > 0.0) c.codeword_var = codeword_var;
    c.validate();
    return c;
  }

  // One config per SNR point; without --snr-db the noise variance is used as given.
  std::vector<SystemConfig> configs() const {
    std::vector<SystemConfig> out;
    if (snr_db.empty()) return {config()};
    // set_snr_db round-trips through noise_var; callers label rows with snr_db[i].
    for (double s : snr_db) {
      SystemConfig c = config();
      c.set_snr_db(s);
      out.push_back(c);
    }
    return out;
  }
};

void add_system_flags(CLI::App* app, SystemFlags& f, bool snr_list) {
  app->add_option("--n-ports", f.n_ports, "number of ports N (count)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--aperture-w", f.aperture_w, "aperture length W (wavelengths)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--sigma2", f.sigma2, "channel variance sigma^2 = E|g|^2 (linear power)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* noise = app->add_option("--noise-var", f.noise_var,
                                "noise variance sigma_eta^2 (linear power)")
                    ->check(CLI::PositiveNumber)
                    ->capture_default_str();
  auto* snr = app->add_option("--snr-db", f.snr_db,
                              snr_list ? "SNR sigma^2/sigma_eta^2 (dB); several values sweep"
                                       : "SNR sigma^2/sigma_eta^2 (dB); overrides --noise-var");
  if (!snr_list) snr->expected(1);
  snr->excludes(noise);
  app->add_option("--blocklength", f.blocklength, "blocklength M (channel uses)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--n-users", f.n_users, "number of users/codewords U (count)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--codeword-var", f.codeword_var,
                  "codeword element variance sigma_c^2 (linear power); default 1/M")
      ->check(CLI::PositiveNumber);
}

struct Output {
  std::string path;
  std::string format = "csv";
};

void add_output_flags(CLI::App* app, Output& o) {
  app->add_option("--out", o.path, "output file (default: standard output)");
  app->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

std::string csv_number(double v) { return format_double(v); }

// ---------------------------------------------------------------- commands

struct CorrelationArgs {
  std::size_t blocklength = 10;
  std::size_t n_users = 20;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

std::string run_correlation(const CorrelationArgs& a, const Output& o) {
  const CorrelationStats s = analytic_correlation_stats(a.blocklength, a.n_users);
  std::optional<CorrelationReports> mc;
  if (a.trials > 0) {
    mc = mc_codeword_correlation(a.blocklength, a.n_users, a.trials, a.seed, a.workers);
  }
  if (o.format == "json") {
    json j = {{"blocklength", a.blocklength},
              {"n_users", a.n_users},
              {"pair_count", s.pair_count},
              {"analytic", {{"rho_bar", s.rho_bar}, {"rho_max", s.rho_max}}}};
    if (mc) j["monte_carlo"] = {{"rho_bar", mc->rho_bar}, {"rho_max", mc->rho_max}};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "quantity,source,value,stderr,n_trials\n";
  os << "rho_bar,analytic," << csv_number(s.rho_bar) << ",,\n";
  os << "rho_max,analytic," << csv_number(s.rho_max) << ",,\n";
  if (mc) {
    for (const McReport* r : {&mc->rho_bar, &mc->rho_max}) {
      os << r->quantity << ",monte-carlo," << csv_number(r->estimate) << ','
         << csv_number(r->std_error) << ',' << r->n_trials << '\n';
    }
  }
  return os.str();
}

struct DistributionArgs {
  std::string method = "mvti";
  double r_max = 0.0;
  std::size_t points = 200;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

std::string distribution_json(const DistributionEval& e) {
  json j = {{"method", std::string(to_string(e.method))}, {"config_hash", e.config_hash},
            {"r", e.r_grid},                    {"cdf", e.cdf},
            {"pdf", e.pdf}};
  return j.dump(2) + "\n";
}

std::string run_distribution(const SystemFlags& sys, const DistributionArgs& a, const Output& o) {
  const SystemConfig c = sys.config();
  const auto profile = port_correlations(c.n_ports, c.aperture_w);
  const double r_max = a.r_max > 0.0 ? a.r_max : 4.0 * std::sqrt(c.channel_var);
  const auto grid = uniform_grid(r_max, a.points);
  const DistMethod m = dist_method_from_string(a.method);
  const DistributionEval e =
      m == DistMethod::empirical
          ? empirical_distribution(c, profile, a.samples, a.seed, grid, a.workers)
          : evaluate_distribution(c, profile, m, grid, {}, a.workers);
  return o.format == "json" ? distribution_json(e) : to_csv(e);
}

struct BlerArgs {
  std::string kind = "conditional";
  double g_amp = -1.0;
  std::string density = "mvti";
  std::size_t antennas = 1;
  std::size_t n0 = 0;
};

std::string run_bler(const SystemFlags& sys, const BlerArgs& a, const Output& o) {
  std::vector<BlerPoint> points;
  const auto cfgs = sys.configs();
  for (const SystemConfig& c : cfgs) {
    const auto profile = port_correlations(c.n_ports, c.aperture_w);
    if (a.kind == "conditional") {
      const double g = a.g_amp >= 0.0 ? a.g_amp : std::sqrt(second_moment(c, profile));
      points.push_back(conditional_bler_fas(g, c));
    } else if (a.kind == "statistical") {
      points.push_back(statistical_bler_fas(c, profile, density_form_from_string(a.density)));
    } else if (a.kind == "l-antenna") {
      points.push_back(bler_l_antenna(a.antennas, c));
    } else {
      points.push_back(random_coding_point(a.n0 > 0 ? a.n0 : a.antennas * c.blocklength, c));
    }
    if (!sys.snr_db.empty()) points.back().snr_db = sys.snr_db[points.size() - 1];
  }
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& p : points) {
      arr.push_back({{"snr_db", p.snr_db},
                     {"kind", std::string(to_string(p.kind))},
                     {"params", p.params},
                     {"value", p.value},
                     {"raw_value", p.raw_value}});
    }
    return arr.dump(2) + "\n";
  }
  return to_csv(points);
}

struct OutageArgs {
  double gamma_th = 1e-3;
  std::string scheme = "fas";
  std::size_t antennas = 1;
  std::string correlation_mode = "mean";
};

std::string run_outage(const SystemFlags& sys, const OutageArgs& a, const Output& o) {
  std::vector<OutagePoint> points;
  const auto cfgs = sys.configs();
  for (const SystemConfig& c : cfgs) {
    OutagePoint p;
    p.x_axis = "snr_db";
    p.x_value = sys.snr_db.empty() ? snr_db(c) : sys.snr_db[points.size()];
    if (a.scheme == "fas") {
      OutageQuery q;
      q.gamma_th = a.gamma_th;
      q.config = c;
      q.correlation_mode = correlation_mode_from_string(a.correlation_mode);
      p.series = "FAS N=" + std::to_string(c.n_ports);
      p.value = outage_fas(q, port_correlations(c.n_ports, c.aperture_w));
    } else {
      p.series = "MRC L=" + std::to_string(a.antennas);
      p.value = outage_mrc(a.gamma_th, a.antennas, c.n_users, c.channel_var, c.noise_var);
    }
    points.push_back(std::move(p));
  }
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& p : points) {
      arr.push_back({{"x_axis", p.x_axis}, {"x_value", p.x_value}, {"series", p.series},
                     {"value", p.value}});
    }
    return arr.dump(2) + "\n";
  }
  return to_csv(points);
}

struct McArgs {
  std::string quantity = "correlation";
  std::size_t trials = 2000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  double gamma_th = 1e-3;
  double r_max = 0.0;
  std::size_t points = 200;
};

std::string reports_out(const std::vector<McReport>& reports, const Output& o) {
  if (o.format == "json") {
    if (reports.size() == 1) return json(reports[0]).dump(2) + "\n";
    return json(reports).dump(2) + "\n";
  }
  std::ostringstream os;
  os << "quantity,estimate,stderr,n_trials,seed\n";
  for (const auto& r : reports) {
    os << r.quantity << ',' << csv_number(r.estimate) << ',' << csv_number(r.std_error) << ','
       << r.n_trials << ',' << r.seed << '\n';
  }
  return os.str();
}

std::string run_mc(const SystemFlags& sys, const McArgs& a, const Output& o) {
  const SystemConfig c = sys.config();
  const auto profile = port_correlations(c.n_ports, c.aperture_w);
  if (a.quantity == "correlation") {
    const auto r = mc_codeword_correlation(c.blocklength, c.n_users, a.trials, a.seed, a.workers,
                                           c.sigma_c2());
    return reports_out({r.rho_bar, r.rho_max}, o);
  }
  if (a.quantity == "gfas") {
    const double r_max = a.r_max > 0.0 ? a.r_max : 4.0 * std::sqrt(c.channel_var);
    const auto grid = uniform_grid(r_max, a.points);
    const DistributionEval e = mc_gfas(c, profile, a.trials, a.seed, grid, a.workers);
    return o.format == "json" ? distribution_json(e) : to_csv(e);
  }
  if (a.quantity == "sinr-outage") {
    return reports_out({mc_sinr_outage(c, profile, a.gamma_th, a.trials, a.seed, a.workers)}, o);
  }
  return reports_out({mc_ml_bler_small(c, profile, a.trials, a.seed, a.workers)}, o);
}

struct SweepArgs {
  std::string preset;
  std::string spec_path;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t workers = 1;
  bool include_runtime = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run_sweep_cmd(const SweepArgs& a, const CLI::Option* seed_opt,
                          const CLI::Option* trials_opt, const Output& o) {
  SweepSpec spec;
  if (!a.preset.empty()) {
    spec = preset(a.preset, a.seed, a.trials);
  } else {
    json j;
    try {
      j = json::parse(read_file(a.spec_path));
    } catch (const json::exception& e) {
      throw InvalidArgument(std::string("spec is not valid JSON: ") + e.what());
    }
    spec = j.get<SweepSpec>();
    if (spec.mc && seed_opt->count() > 0) spec.mc->seed = a.seed;
    if (spec.mc && trials_opt->count() > 0 && a.trials > 0) spec.mc->n_trials = a.trials;
  }
  const SweepResult r = run_sweep(spec, a.workers);
  if (o.format == "json") return to_json_envelope(r, a.include_runtime).dump(2) + "\n";
  return to_csv(r);
}

struct ValidateArgs {
  std::string suite = "all";
  std::uint64_t seed = 7;
  std::size_t workers = 1;
};

std::string run_validate(const ValidateArgs& a, const Output& o, bool& all_passed) {
  validation::Options opt;
  opt.seed = a.seed;
  opt.workers = a.workers;
  const auto results = validation::run_suite(a.suite, opt);
  all_passed = std::all_of(results.begin(), results.end(),
                           [](const validation::CheckResult& r) { return r.passed; });
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed},
                     {"detail", r.detail}, {"seconds", r.seconds}});
    }
    return arr.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& r : results) os << validation::format_line(r) << '\n';
  return os.str();
}

void emit(const std::string& data, const Output& o, std::ostream& out) {
  if (o.path.empty()) {
    out << data;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + o.path);
  f << data;
  if (!f) throw InvalidArgument("failed writing " + o.path);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-blocklength fluid-antenna analysis: correlations, distributions, BLER, "
               "outage, Monte-Carlo oracles and figure sweeps."};
  app.name("fblfas");
  app.require_subcommand(1, 1);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "JSON object of flag values for the subcommand; explicit flags win");
  app.config_formatter(std::make_shared<JsonConfig>(&app));

  Output output;
  SystemFlags sys;

  CorrelationArgs corr;
  auto* c_cmd = app.add_subcommand("correlation", "analytic (and optional Monte-Carlo) codeword correlation");
  c_cmd->add_option("--blocklength", corr.blocklength, "blocklength M (channel uses)")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c_cmd->add_option("--n-users", corr.n_users, "number of codewords U (count, >= 2)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20))->capture_default_str();
  c_cmd->add_option("--trials", corr.trials, "Monte-Carlo trials (count; 0 = analytic only)")
      ->capture_default_str();
  c_cmd->add_option("--seed", corr.seed, "RNG seed (integer)")->capture_default_str();
  c_cmd->add_option("--workers", corr.workers, "worker threads (count; 0 = all cores)")
      ->capture_default_str();
  add_output_flags(c_cmd, output);

  DistributionArgs dist;
  auto* d_cmd = app.add_subcommand("distribution", "CDF and PDF of the best-port amplitude |g_FAS|");
  add_system_flags(d_cmd, sys, false);
  d_cmd->add_option("--method", dist.method, "exact | mvti | empirical")
      ->check(CLI::IsMember({"exact", "mvti", "empirical"}))->capture_default_str();
  d_cmd->add_option("--r-max", dist.r_max, "largest radius (amplitude, linear); default 4 sigma");
  d_cmd->add_option("--points", dist.points, "grid points including 0 and r-max (count)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24))->capture_default_str();
  d_cmd->add_option("--samples", dist.samples, "Monte-Carlo samples for empirical (count)")
      ->capture_default_str();
  d_cmd->add_option("--seed", dist.seed, "RNG seed (integer)")->capture_default_str();
  d_cmd->add_option("--workers", dist.workers, "worker threads (count; 0 = all cores)")
      ->capture_default_str();
  add_output_flags(d_cmd, output);

  BlerArgs bl;
  auto* b_cmd = app.add_subcommand("bler", "block-error-rate bounds over an SNR list");
  add_system_flags(b_cmd, sys, true);
  b_cmd->add_option("--kind", bl.kind, "conditional | statistical | l-antenna | random-coding")
      ->check(CLI::IsMember({"conditional", "statistical", "l-antenna", "random-coding"}))
      ->capture_default_str();
  b_cmd->add_option("--g-amp", bl.g_amp,
                    "conditioning amplitude |g_FAS| (linear); default RMS of |g_FAS|");
  b_cmd->add_option("--density", bl.density, "statistical density: mvti | exact")
      ->check(CLI::IsMember({"mvti", "exact"}))->capture_default_str();
  b_cmd->add_option("--antennas", bl.antennas, "antennas L for l-antenna / random-coding (count)")
      ->check(CLI::PositiveNumber)->capture_default_str();
  b_cmd->add_option("--n0", bl.n0, "random-coding blocklength n0 (channel uses); default L M");
  add_output_flags(b_cmd, output);

  OutageArgs op;
  auto* o_cmd = app.add_subcommand("outage", "outage probability over an SNR list");
  add_system_flags(o_cmd, sys, true);
  o_cmd->add_option("--gamma-th", op.gamma_th, "SINR threshold (linear ratio)")
      ->check(CLI::PositiveNumber)->capture_default_str();
  o_cmd->add_option("--scheme", op.scheme, "fas | mrc")
      ->check(CLI::IsMember({"fas", "mrc"}))->capture_default_str();
  o_cmd->add_option("--antennas", op.antennas, "MRC antennas L (count)")
      ->check(CLI::PositiveNumber)->capture_default_str();
  o_cmd->add_option("--correlation-mode", op.correlation_mode, "interference correlation: mean | max")
      ->check(CLI::IsMember({"mean", "max"}))->capture_default_str();
  add_output_flags(o_cmd, output);

  McArgs mc;
  auto* m_cmd = app.add_subcommand("mc", "Monte-Carlo oracles");
  add_system_flags(m_cmd, sys, false);
  m_cmd->add_option("--quantity", mc.quantity, "correlation | gfas | sinr-outage | ml-bler")
      ->check(CLI::IsMember({"correlation", "gfas", "sinr-outage", "ml-bler"}))
      ->capture_default_str();
  m_cmd->add_option("--trials", mc.trials, "trials or samples (count)")
      ->check(CLI::PositiveNumber)->capture_default_str();
  m_cmd->add_option("--seed", mc.seed, "RNG seed (integer)")->capture_default_str();
  m_cmd->add_option("--workers", mc.workers, "worker threads (count; 0 = all cores)")
      ->capture_default_str();
  m_cmd->add_option("--gamma-th", mc.gamma_th, "SINR threshold for sinr-outage (linear ratio)")
      ->capture_default_str();
  m_cmd->add_option("--r-max", mc.r_max, "gfas grid radius (amplitude, linear); default 4 sigma");
  m_cmd->add_option("--points", mc.points, "gfas grid points (count)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24))->capture_default_str();
  add_output_flags(m_cmd, output);

  SweepArgs sw;
  auto* s_cmd = app.add_subcommand("sweep", "run a figure preset or a JSON sweep spec");
  auto* preset_opt = s_cmd->add_option("--preset", sw.preset, "figure preset")
                         ->check(CLI::IsMember(preset_names()));
  auto* spec_opt = s_cmd->add_option("--spec", sw.spec_path, "sweep spec JSON file");
  preset_opt->excludes(spec_opt);
  auto* seed_opt = s_cmd->add_option("--seed", sw.seed, "RNG seed for Monte-Carlo series (integer)")
                       ->capture_default_str();
  auto* trials_opt = s_cmd->add_option("--trials", sw.trials,
                                       "Monte-Carlo trials (count; 0 = preset default)")
                         ->capture_default_str();
  s_cmd->add_option("--workers", sw.workers, "worker threads (count; 0 = all cores)")
      ->capture_default_str();
  s_cmd->add_flag("--include-runtime", sw.include_runtime, "add runtime_ms to the JSON envelope");
  add_output_flags(s_cmd, output);

  ValidateArgs va;
  auto* v_cmd = app.add_subcommand("validate", "run the acceptance checks and print a pass/fail table");
  v_cmd->add_option("--suite", va.suite, "all, a criterion number 1-8, or a check name")
      ->check(CLI::IsMember([] {
        std::vector<std::string> v = validation::suite_names();
        for (int i = 1; i <= 8; ++i) v.push_back(std::to_string(i));
        return v;
      }()))
      ->capture_default_str();
  v_cmd->add_option("--seed", va.seed, "RNG seed (integer)")->capture_default_str();
  v_cmd->add_option("--workers", va.workers, "worker threads (count; 0 = all cores)")
      ->capture_default_str();
  add_output_flags(v_cmd, output);

  for (auto* sub : app.get_subcommands({})) {
    sub->configurable()->fallthrough()->allow_config_extras(CLI::config_extras_mode::error);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitInvalid;
  }

  try {
    std::string data;
    bool checks_passed = true;
    if (*c_cmd) {
      data = run_correlation(corr, output);
    } else if (*d_cmd) {
      data = run_distribution(sys, dist, output);
    } else if (*b_cmd) {
      data = run_bler(sys, bl, output);
    } else if (*o_cmd) {
      data = run_outage(sys, op, output);
    } else if (*m_cmd) {
      data = run_mc(sys, mc, output);
    } else if (*s_cmd) {
      if (sw.preset.empty() && sw.spec_path.empty()) {
        throw InvalidArgument("sweep needs --preset or --spec");
      }
      data = run_sweep_cmd(sw, seed_opt, trials_opt, output);
    } else if (*v_cmd) {
      data = run_validate(va, output, checks_passed);
    }
    emit(data, output, out);
    return checks_passed ? kExitOk : kExitChecksFailed;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << " (best estimate " << e.best_estimate()
        << ", error bound " << e.error_bound() << ")\n";
    return kExitNumeric;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    err << "invalid JSON: " << e.what() << '\n';
  }
  return kExitInvalid;
}

}  // namespace fblfas::cli
