#include "fblfas/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "fblfas/bler.hpp"
#include "fblfas/codeword_stats.hpp"
#include "fblfas/errors.hpp"
#include "fblfas/fas_distribution.hpp"
#include "fblfas/montecarlo.hpp"
#include "fblfas/outage.hpp"
#include "fblfas/parallel.hpp"
#include "fblfas/text_format.hpp"

namespace fblfas {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

const std::vector<std::string> kConfigParams = {"n_ports",   "aperture_w",  "channel_var",
                                                "noise_var", "blocklength", "n_users",
                                                "codeword_var"};
const std::vector<std::string> kStringParams = {"density", "correlation_mode"};

bool contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

bool is_mc_metric(std::string_view m) {
  return m.rfind("mc_", 0) == 0 || m == "cdf_empirical" || m == "pdf_empirical";
}

// Resolved parameters of one cell.
struct Cell {
  SystemConfig config;
  json params;

  double real(const char* key, double fallback) const {
    return params.contains(key) ? params.at(key).get<double>() : fallback;
  }
  double real(const char* key) const {
    require(params.contains(key), std::string("missing parameter: ") + key);
    return params.at(key).get<double>();
  }
  std::size_t count(const char* key, std::size_t fallback) const {
    if (!params.contains(key)) return fallback;
    const double v = params.at(key).get<double>();
    require(v >= 0 && std::floor(v) == v, std::string(key) + " must be a non-negative integer");
    return static_cast<std::size_t>(v);
  }
  std::string text(const char* key, const char* fallback) const {
    return params.contains(key) ? params.at(key).get<std::string>() : fallback;
  }
};

std::size_t as_count(const json& v, const std::string& key) {
  const double d = v.get<double>();
  require(d >= 0 && std::floor(d) == d, key + " must be a non-negative integer");
  return static_cast<std::size_t>(d);
}

Cell resolve(const SweepSpec& spec, const SeriesSpec& series, double axis_value) {
  json p = spec.base_params;
  for (const auto& [k, v] : series.params.items()) p[k] = v;
  p[spec.axis.name] = axis_value;
  Cell c;
  c.config = spec.base_config;
  for (const auto& [k, v] : p.items()) {
    if (k == "n_ports") c.config.n_ports = as_count(v, k);
    else if (k == "aperture_w") c.config.aperture_w = v.get<double>();
    else if (k == "channel_var") c.config.channel_var = v.get<double>();
    else if (k == "noise_var") c.config.noise_var = v.get<double>();
    else if (k == "blocklength") c.config.blocklength = as_count(v, k);
    else if (k == "n_users") c.config.n_users = as_count(v, k);
    else if (k == "codeword_var") c.config.codeword_var = v.get<double>();
  }
  // SNR is applied last so it sees any channel_var override.
  if (p.contains("snr_db")) c.config.set_snr_db(p.at("snr_db").get<double>());
  c.config.validate();
  c.params = std::move(p);
  return c;
}

struct CellValue {
  double value = 0.0;
  std::optional<double> raw;
  std::optional<double> std_error;
};

CellValue from_bler(const BlerPoint& b) { return {b.value, b.raw_value, std::nullopt}; }

CellValue from_mc(const McReport& r) { return {r.estimate, std::nullopt, r.std_error}; }

using Evaluator = std::function<CellValue(const Cell&, const McSettings*)>;

PortCorrelationProfile profile_of(const Cell& c) {
  return port_correlations(c.config.n_ports, c.config.aperture_w);
}

double rms_amplitude(const Cell& c, const PortCorrelationProfile& profile) {
  return std::sqrt(second_moment(c.config, profile));
}

double empirical_at(const Cell& c, const McSettings* mc, bool want_cdf) {
  const double r = c.real("r");
  const std::vector<double> grid{r};
  const DistributionEval e =
      empirical_distribution(c.config, profile_of(c), mc->n_trials, mc->seed, grid);
  return want_cdf ? e.cdf[0] : e.pdf[0];
}

const std::map<std::string, Evaluator>& evaluators() {
  static const std::map<std::string, Evaluator> table = {
      {"rho_bar",
       [](const Cell& c, const McSettings*) {
         return CellValue{average_correlation(c.config.blocklength), {}, {}};
       }},
      {"rho_max",
       [](const Cell& c, const McSettings*) {
         return CellValue{max_correlation(c.config.blocklength, c.config.n_users), {}, {}};
       }},
      {"mc_rho_bar",
       [](const Cell& c, const McSettings* mc) {
         return from_mc(mc_codeword_correlation(c.config.blocklength, c.config.n_users,
                                                mc->n_trials, mc->seed, 1, c.config.sigma_c2())
                            .rho_bar);
       }},
      {"mc_rho_max",
       [](const Cell& c, const McSettings* mc) {
         return from_mc(mc_codeword_correlation(c.config.blocklength, c.config.n_users,
                                                mc->n_trials, mc->seed, 1, c.config.sigma_c2())
                            .rho_max);
       }},
      {"cdf_exact",
       [](const Cell& c, const McSettings*) {
         return CellValue{cdf_exact(c.real("r"), c.config, profile_of(c)), {}, {}};
       }},
      {"pdf_exact",
       [](const Cell& c, const McSettings*) {
         return CellValue{pdf_exact(c.real("r"), c.config, profile_of(c)), {}, {}};
       }},
      {"cdf_mvti",
       [](const Cell& c, const McSettings*) {
         return CellValue{cdf_mvti(c.real("r"), c.config, profile_of(c)), {}, {}};
       }},
      {"pdf_mvti",
       [](const Cell& c, const McSettings*) {
         return CellValue{pdf_mvti(c.real("r"), c.config, profile_of(c)), {}, {}};
       }},
      {"cdf_empirical",
       [](const Cell& c, const McSettings* mc) {
         return CellValue{empirical_at(c, mc, true), {}, {}};
       }},
      {"pdf_empirical",
       [](const Cell& c, const McSettings* mc) {
         return CellValue{empirical_at(c, mc, false), {}, {}};
       }},
      {"bler_conditional",
       [](const Cell& c, const McSettings*) {
         double g = 0.0;
         if (c.params.contains("g_amp") && c.params.at("g_amp").is_number()) {
           g = c.params.at("g_amp").get<double>();
         } else {
           g = rms_amplitude(c, profile_of(c));
         }
         return from_bler(conditional_bler_fas(g, c.config));
       }},
      {"bler_statistical",
       [](const Cell& c, const McSettings*) {
         return from_bler(statistical_bler_fas(
             c.config, profile_of(c), density_form_from_string(c.text("density", "mvti"))));
       }},
      {"bler_l_antenna",
       [](const Cell& c, const McSettings*) {
         return from_bler(bler_l_antenna(c.count("L", 1), c.config));
       }},
      {"bler_random_coding",
       [](const Cell& c, const McSettings*) {
         const std::size_t n0 = c.count("n0", c.count("L", 1) * c.config.blocklength);
         return from_bler(random_coding_point(n0, c.config));
       }},
      {"outage_fas",
       [](const Cell& c, const McSettings*) {
         OutageQuery q;
         q.gamma_th = c.real("gamma_th");
         q.config = c.config;
         q.correlation_mode = correlation_mode_from_string(c.text("correlation_mode", "mean"));
         return CellValue{outage_fas(q, profile_of(c)), {}, {}};
       }},
      {"outage_mrc",
       [](const Cell& c, const McSettings*) {
         return CellValue{outage_mrc(c.real("gamma_th"), c.count("L", 1), c.config.n_users,
                                     c.config.channel_var, c.config.noise_var),
                          {},
                          {}};
       }},
      {"mc_sinr_outage",
       [](const Cell& c, const McSettings* mc) {
         return from_mc(mc_sinr_outage(c.config, profile_of(c), c.real("gamma_th"), mc->n_trials,
                                       mc->seed));
       }},
      {"mc_ml_bler",
       [](const Cell& c, const McSettings* mc) {
         return from_mc(mc_ml_bler_small(c.config, profile_of(c), mc->n_trials, mc->seed));
       }},
  };
  return table;
}

void check_param(const std::string& key, const json& value) {
  require(contains(cell_parameter_names(), key), "unknown sweep parameter: " + key);
  if (contains(kStringParams, key)) {
    require(value.is_string(), key + " must be a string");
  } else if (key == "g_amp") {
    require(value.is_number() || value == "rms", "g_amp must be a number or \"rms\"");
  } else {
    require(value.is_number(), key + " must be a number");
  }
}

void check_params(const json& params, const char* where) {
  require(params.is_object(), std::string(where) + " must be a JSON object");
  for (const auto& [k, v] : params.items()) check_param(k, v);
}

template <class T>
T get_field(const json& j, const char* key) {
  require(j.contains(key), std::string("missing field: ") + key);
  return j.at(key).get<T>();
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, const char* what) {
  require(j.is_object(), std::string(what) + " must be a JSON object");
  for (const auto& [k, _] : j.items()) {
    require(std::find(allowed.begin(), allowed.end(), k) != allowed.end(),
            std::string("unknown ") + what + " field: " + k);
  }
}

}  // namespace

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : evaluators()) v.push_back(k);
    return v;
  }();
  return names;
}

const std::vector<std::string>& cell_parameter_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v = kConfigParams;
    for (const char* k : {"snr_db", "gamma_th", "L", "n0", "g_amp", "r"}) v.emplace_back(k);
    for (const auto& k : kStringParams) v.push_back(k);
    return v;
  }();
  return names;
}

void SweepSpec::validate() const {
  base_config.validate();
  check_params(base_params, "base_params");
  require(!axis.name.empty(), "axis name must be set");
  require(contains(cell_parameter_names(), axis.name) && !contains(kStringParams, axis.name) &&
              axis.name != "g_amp",
          "axis must be a numeric sweep parameter: " + axis.name);
  require(!axis.values.empty(), "axis values must not be empty");
  for (double v : axis.values) require(std::isfinite(v), "axis values must be finite");
  if (axis.values.size() > 1) {
    const bool up = axis.values[1] > axis.values[0];
    for (std::size_t i = 1; i < axis.values.size(); ++i) {
      require(up ? axis.values[i] > axis.values[i - 1] : axis.values[i] < axis.values[i - 1],
              "axis values must be strictly monotone");
    }
  }
  require(!series.empty(), "at least one series is required");
  for (const auto& s : series) {
    require(!s.name.empty(), "series name must be set");
    require(s.name.find(',') == std::string::npos && s.name.find('\n') == std::string::npos,
            "series name must not contain commas or newlines");
    require(evaluators().count(s.metric) == 1, "unknown metric: " + s.metric);
    check_params(s.params, "series params");
    require(!is_mc_metric(s.metric) || mc.has_value(), "metric " + s.metric + " needs mc settings");
  }
  if (mc) require(mc->n_trials >= 1, "mc.n_trials must be >= 1");
}

void to_json(json& j, const SweepSpec& s) {
  j = json::object();
  j["figure_id"] = s.figure_id;
  j["base_config"] = s.base_config;
  j["base_params"] = s.base_params;
  j["axis"] = {{"name", s.axis.name}, {"values", s.axis.values}};
  json series = json::array();
  for (const auto& x : s.series) {
    series.push_back({{"name", x.name}, {"metric", x.metric}, {"params", x.params}});
  }
  j["series"] = std::move(series);
  if (s.mc) j["mc"] = {{"n_trials", s.mc->n_trials}, {"seed", s.mc->seed}};
}

void from_json(const json& j, SweepSpec& s) {
  check_keys(j, {"figure_id", "base_config", "base_params", "axis", "series", "mc"}, "sweep spec");
  SweepSpec out;
  try {
    if (j.contains("figure_id")) out.figure_id = j.at("figure_id").get<std::string>();
    out.base_config = get_field<SystemConfig>(j, "base_config");
    if (j.contains("base_params")) out.base_params = j.at("base_params");
    const json& axis = j.at("axis");
    check_keys(axis, {"name", "values"}, "axis");
    out.axis.name = get_field<std::string>(axis, "name");
    out.axis.values = get_field<std::vector<double>>(axis, "values");
    for (const auto& x : j.at("series")) {
      check_keys(x, {"name", "metric", "params"}, "series");
      SeriesSpec ss;
      ss.name = get_field<std::string>(x, "name");
      ss.metric = get_field<std::string>(x, "metric");
      if (x.contains("params")) ss.params = x.at("params");
      out.series.push_back(std::move(ss));
    }
    if (j.contains("mc")) {
      const json& mc = j.at("mc");
      check_keys(mc, {"n_trials", "seed"}, "mc");
      out.mc = McSettings{get_field<std::size_t>(mc, "n_trials"),
                          get_field<std::uint64_t>(mc, "seed")};
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed sweep spec: ") + e.what());
  }
  out.validate();
  s = std::move(out);
}

SweepResult run_sweep(const SweepSpec& spec, std::size_t workers) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  SweepResult result;
  result.spec = spec;
  const std::size_t n_series = spec.series.size();
  const std::size_t n_cells = spec.axis.values.size() * n_series;
  result.rows.resize(n_cells);
  const McSettings* mc = spec.mc ? &*spec.mc : nullptr;
  parallel_for(n_cells, workers, [&](std::size_t i) {
    const double x = spec.axis.values[i / n_series];
    const SeriesSpec& s = spec.series[i % n_series];
    SweepRow& row = result.rows[i];
    row.axis_value = x;
    row.series = s.name;
    try {
      const Cell cell = resolve(spec, s, x);
      const CellValue v = evaluators().at(s.metric)(cell, mc);
      row.value = v.value;
      row.raw_value = v.raw;
      row.std_error = v.std_error;
    } catch (const std::exception& e) {
      row.value = std::nan("");
      row.error = e.what();
    }
  });
  result.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "axis,axis_value,series,value,raw_value,stderr\n";
  for (const auto& r : result.rows) {
    os << result.spec.axis.name << ',' << format_double(r.axis_value) << ',' << r.series << ',';
    if (r.error) {
      os << "error,,\n";
      continue;
    }
    os << format_double(r.value) << ',';
    if (r.raw_value) os << format_double(*r.raw_value);
    os << ',';
    if (r.std_error) os << format_double(*r.std_error);
    os << '\n';
  }
  return os.str();
}

json to_json_envelope(const SweepResult& result, bool include_runtime) {
  json rows = json::array();
  for (const auto& r : result.rows) {
    json row = {{"axis_value", r.axis_value}, {"series", r.series}};
    if (r.error) {
      row["error"] = *r.error;
    } else {
      row["value"] = r.value;
      if (r.raw_value) row["raw_value"] = *r.raw_value;
      if (r.std_error) row["stderr"] = *r.std_error;
    }
    rows.push_back(std::move(row));
  }
  json j = {{"spec", result.spec}, {"axis", result.spec.axis.name}, {"rows", std::move(rows)}};
  if (include_runtime) j["runtime_ms"] = result.runtime_ms;
  return j;
}

// ---------------------------------------------------------------- presets

namespace {

std::vector<double> range(double first, double last, double step) {
  std::vector<double> v;
  const auto n = static_cast<std::size_t>(std::llround((last - first) / step));
  for (std::size_t i = 0; i <= n; ++i) v.push_back(first + step * static_cast<double>(i));
  return v;
}

SystemConfig base(std::size_t n_ports, double w, std::size_t m, std::size_t u) {
  SystemConfig c;
  c.n_ports = n_ports;
  c.aperture_w = w;
  c.blocklength = m;
  c.n_users = u;
  return c;
}

SeriesSpec series(std::string name, std::string metric, json params = json::object()) {
  return {std::move(name), std::move(metric), std::move(params)};
}

std::string num(std::size_t v) { return std::to_string(v); }

SweepSpec fig2() {
  SweepSpec s;
  s.figure_id = "fig2";
  s.base_config = base(1, 0.5, 10, 20);
  s.axis = {"blocklength", {10, 20, 50, 100}};
  for (std::size_t u : {20, 40, 60, 80}) {
    s.series.push_back(series("rho_max U=" + num(u), "rho_max", {{"n_users", u}}));
    s.series.push_back(series("mc rho_max U=" + num(u), "mc_rho_max", {{"n_users", u}}));
  }
  s.series.push_back(series("rho_bar", "rho_bar"));
  for (std::size_t u : {20, 40, 60, 80}) {
    s.series.push_back(series("mc rho_bar U=" + num(u), "mc_rho_bar", {{"n_users", u}}));
  }
  s.mc = McSettings{2000, 0};
  return s;
}

SweepSpec fig3() {
  SweepSpec s;
  s.figure_id = "fig3";
  s.base_config = base(10, 0.5, 1, 1);
  s.axis = {"r", range(0.0, 4.0, 0.05)};
  s.series = {series("cdf exact", "cdf_exact"),          series("cdf mvti", "cdf_mvti"),
              series("cdf mc", "cdf_empirical"),         series("pdf exact", "pdf_exact"),
              series("pdf mvti", "pdf_mvti"),            series("pdf mc", "pdf_empirical")};
  s.mc = McSettings{100000, 0};
  return s;
}

SweepSpec fig4() {
  SweepSpec s;
  s.figure_id = "fig4";
  s.base_config = base(5, 0.5, 5, 10);
  s.axis = {"snr_db", range(-10.0, 20.0, 1.0)};
  for (std::size_t n : {5, 25, 1000}) {
    s.series.push_back(series("conditional N=" + num(n), "bler_conditional", {{"n_ports", n}}));
    s.series.push_back(series("statistical N=" + num(n), "bler_statistical", {{"n_ports", n}}));
  }
  for (std::size_t l : {1, 2, 3}) {
    s.series.push_back(series("L=" + num(l), "bler_l_antenna", {{"L", l}}));
    s.series.push_back(series("random coding L=" + num(l), "bler_random_coding", {{"L", l}}));
  }
  return s;
}

SweepSpec fig5() {
  SweepSpec s;
  s.figure_id = "fig5";
  s.base_config = base(5, 1.0, 5, 10);
  s.base_params = {{"snr_db", 12.0}};
  s.axis = {"n_ports", {2, 5, 10, 20, 50, 100, 200, 500, 1000}};
  s.series = {series("conditional", "bler_conditional"), series("statistical", "bler_statistical")};
  for (std::size_t l : {1, 2}) {
    s.series.push_back(series("L=" + num(l), "bler_l_antenna", {{"L", l}}));
  }
  return s;
}

SweepSpec fig6() {
  SweepSpec s;
  s.figure_id = "fig6";
  s.base_config = base(5, 1.0, 5, 1);
  s.base_params = {{"snr_db", 20.0}};
  s.axis = {"n_users", range(1.0, 10.0, 1.0)};
  for (std::size_t n : {5, 50, 5000}) {
    s.series.push_back(series("conditional N=" + num(n), "bler_conditional", {{"n_ports", n}}));
    s.series.push_back(series("statistical N=" + num(n), "bler_statistical", {{"n_ports", n}}));
  }
  for (std::size_t l : {1, 2}) {
    s.series.push_back(series("L=" + num(l), "bler_l_antenna", {{"L", l}}));
  }
  return s;
}

SweepSpec fig7() {
  SweepSpec s;
  s.figure_id = "fig7";
  s.base_config = base(5, 0.5, 5, 20);
  s.base_params = {{"gamma_th", 1e-3}};
  s.axis = {"snr_db", range(-40.0, 60.0, 5.0)};
  for (std::size_t n : {5, 10, 100}) {
    s.series.push_back(series("FAS N=" + num(n), "outage_fas", {{"n_ports", n}}));
  }
  for (std::size_t l : {1, 3, 5}) {
    s.series.push_back(series("MRC L=" + num(l), "outage_mrc", {{"L", l}}));
  }
  return s;
}

SweepSpec fig8() {
  SweepSpec s;
  s.figure_id = "fig8";
  s.base_config = base(5, 0.5, 5, 10);
  s.base_params = {{"gamma_th", 1e-4}, {"snr_db", -35.0}};
  s.axis = {"n_users", range(10.0, 100.0, 10.0)};
  for (std::size_t n : {5, 10, 25, 50}) {
    s.series.push_back(series("FAS N=" + num(n), "outage_fas", {{"n_ports", n}}));
  }
  for (std::size_t l : {1, 3, 5, 7}) {
    s.series.push_back(series("MRC L=" + num(l), "outage_mrc", {{"L", l}}));
  }
  return s;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig2", "fig3", "fig4", "fig5",
                                                 "fig6", "fig7", "fig8"};
  return names;
}

SweepSpec preset(std::string_view figure_id, std::uint64_t seed, std::size_t n_trials) {
  SweepSpec s;
  if (figure_id == "fig2") s = fig2();
  else if (figure_id == "fig3") s = fig3();
  else if (figure_id == "fig4") s = fig4();
  else if (figure_id == "fig5") s = fig5();
  else if (figure_id == "fig6") s = fig6();
  else if (figure_id == "fig7") s = fig7();
  else if (figure_id == "fig8") s = fig8();
  else throw InvalidArgument("unknown preset: " + std::string(figure_id));
  if (s.mc) {
    s.mc->seed = seed;
    if (n_trials > 0) s.mc->n_trials = n_trials;
  }
  return s;
}

}  // namespace fblfas
