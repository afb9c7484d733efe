#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fblfas/errors.hpp"
#include "fblfas/experiments.hpp"

using namespace fblfas;
using nlohmann::json;

namespace {

SweepSpec small_spec() {
  SweepSpec s;
  s.base_config.n_ports = 4;
  s.base_config.blocklength = 5;
  s.base_config.n_users = 6;
  s.base_params = {{"gamma_th", 1e-3}};
  s.axis = {"snr_db", {-10.0, 0.0, 10.0}};
  s.series = {{"fas", "outage_fas", json::object()},
              {"mrc", "outage_mrc", {{"L", 2}}},
              {"ml", "mc_ml_bler", {{"n_users", 2}, {"n_ports", 2}}},
              {"sinr", "mc_sinr_outage", json::object()}};
  s.mc = McSettings{400, 9};
  return s;
}

const SweepRow& row(const SweepResult& r, double x, const std::string& series) {
  for (const auto& row : r.rows) {
    if (row.axis_value == x && row.series == series) return row;
  }
  throw std::runtime_error("row not found: " + series);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(SweepSpec, ValidationErrors) {
  auto s = small_spec();
  s.axis.values.clear();
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = small_spec();
  s.axis.values = {1.0, 3.0, 2.0};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = small_spec();
  s.series.clear();
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = small_spec();
  s.series[0].metric = "bogus";
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = small_spec();
  s.series[0].params = {{"antennas", 3}};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = small_spec();
  s.mc.reset();
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = small_spec();
  s.axis.name = "density";
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = small_spec();
  s.axis.values = {3.0, 2.0, 1.0};
  EXPECT_NO_THROW(s.validate());
  EXPECT_THROW(run_sweep(SweepSpec{}), InvalidArgument);
}

TEST(SweepSpec, JsonRoundTripAndStrictKeys) {
  const auto s = small_spec();
  const json j = s;
  const SweepSpec back = j.get<SweepSpec>();
  EXPECT_EQ(json(back).dump(), j.dump());
  json extra = j;
  extra["colour"] = "red";
  EXPECT_THROW(extra.get<SweepSpec>(), InvalidArgument);
  json bad_axis = j;
  bad_axis["axis"]["step"] = 1;
  EXPECT_THROW(bad_axis.get<SweepSpec>(), InvalidArgument);
  json empty = j;
  empty["axis"]["values"] = json::array();
  EXPECT_THROW(empty.get<SweepSpec>(), InvalidArgument);
}

TEST(RunSweep, RowOrderAndByteReproducibility) {
  const auto s = small_spec();
  const auto a = run_sweep(s, 1);
  ASSERT_EQ(a.rows.size(), 12u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].axis_value, s.axis.values[i / 4]);
    EXPECT_EQ(a.rows[i].series, s.series[i % 4].name);
  }
  const auto b = run_sweep(s, 1);
  const auto c = run_sweep(s, 3);
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_EQ(to_csv(a), to_csv(c));
  EXPECT_EQ(to_json_envelope(a).dump(), to_json_envelope(c).dump());
  EXPECT_FALSE(to_json_envelope(a).contains("runtime_ms"));
  EXPECT_TRUE(to_json_envelope(a, true).contains("runtime_ms"));
  const std::string csv = to_csv(a);
  EXPECT_EQ(csv.rfind("axis,axis_value,series,value,raw_value,stderr\n", 0), 0u);
  EXPECT_TRUE(row(a, 0.0, "ml").std_error.has_value());
  EXPECT_FALSE(row(a, 0.0, "fas").std_error.has_value());
}

TEST(RunSweep, CellErrorsAreRecorded) {
  auto s = small_spec();
  s.base_params = json::object();  // outage metrics lose gamma_th
  s.series.push_back({"max", "outage_fas", {{"gamma_th", 1e-3}, {"correlation_mode", "max"}, {"n_users", 2}}});
  const auto r = run_sweep(s);
  EXPECT_TRUE(row(r, 0.0, "fas").error.has_value());
  EXPECT_TRUE(row(r, 0.0, "max").error.has_value());
  EXPECT_FALSE(row(r, 0.0, "ml").error.has_value());
  const std::string csv = to_csv(r);
  EXPECT_NE(csv.find("snr_db,0,fas,error,,\n"), std::string::npos);
  const json env = to_json_envelope(r);
  EXPECT_TRUE(env["rows"][0].contains("error"));
}

TEST(RunSweep, SnrAppliedAfterChannelVariance) {
  SweepSpec s;
  s.base_config.n_users = 20;
  s.base_params = {{"gamma_th", 1e-3}, {"channel_var", 4.0}};
  s.axis = {"snr_db", {0.0}};
  s.series = {{"mrc", "outage_mrc", json::object()}};
  const auto r = run_sweep(s);
  // sigma^2 = 4 and sigma_eta^2 = 4 at 0 dB.
  const double pi = std::acos(-1.0);
  const double gamma = 4.0 * 4.0 / (pi * 19.0 * 4.0 + 4.0 * 4.0);
  EXPECT_NEAR(r.rows[0].value, -std::expm1(-1e-3 / gamma), 1e-15);
}

TEST(RunSweep, ConditionalAmplitudeOverride) {
  SweepSpec s;
  s.base_config.n_ports = 5;
  s.base_config.blocklength = 5;
  s.base_config.n_users = 10;
  s.axis = {"snr_db", {12.0}};
  s.series = {{"rms", "bler_conditional", {{"g_amp", "rms"}}},
              {"default", "bler_conditional", json::object()},
              {"unit", "bler_conditional", {{"g_amp", 1.0}}}};
  const auto r = run_sweep(s);
  EXPECT_EQ(r.rows[0].value, r.rows[1].value);
  EXPECT_NE(r.rows[0].value, r.rows[2].value);
  EXPECT_GT(r.rows[2].raw_value.value(), r.rows[0].raw_value.value());
}

TEST(Presets, CaptionParameters) {
  std::set<std::string> seen;
  for (const auto& id : preset_names()) {
    const auto s = preset(id, 42);
    EXPECT_NO_THROW(s.validate()) << id;
    EXPECT_EQ(s.figure_id, id);
    seen.insert(id);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_THROW(preset("fig9"), InvalidArgument);

  const auto f2 = preset("fig2", 42);
  EXPECT_EQ(f2.axis.name, "blocklength");
  EXPECT_EQ(f2.axis.values, (std::vector<double>{10, 20, 50, 100}));
  ASSERT_TRUE(f2.mc.has_value());
  EXPECT_EQ(f2.mc->n_trials, 2000u);
  EXPECT_EQ(f2.mc->seed, 42u);
  std::set<double> users;
  for (const auto& s : f2.series) {
    if (s.metric == "rho_max") users.insert(s.params.at("n_users").get<double>());
  }
  EXPECT_EQ(users, (std::set<double>{20, 40, 60, 80}));
  EXPECT_EQ(std::count_if(f2.series.begin(), f2.series.end(),
                          [](const SeriesSpec& s) { return s.metric == "rho_bar"; }),
            1);

  const auto f3 = preset("fig3");
  EXPECT_EQ(f3.base_config.n_ports, 10u);
  EXPECT_EQ(f3.base_config.aperture_w, 0.5);
  EXPECT_EQ(f3.base_config.channel_var, 1.0);
  EXPECT_EQ(f3.mc->n_trials, 100000u);

  const auto f4 = preset("fig4");
  EXPECT_EQ(f4.base_config.aperture_w, 0.5);
  EXPECT_EQ(f4.base_config.n_users, 10u);
  EXPECT_EQ(f4.base_config.blocklength, 5u);

  const auto f5 = preset("fig5");
  EXPECT_EQ(f5.base_config.aperture_w, 1.0);
  EXPECT_EQ(f5.base_params.at("snr_db"), 12.0);

  const auto f6 = preset("fig6");
  EXPECT_EQ(f6.base_config.aperture_w, 1.0);
  EXPECT_EQ(f6.base_params.at("snr_db"), 20.0);

  const auto f7 = preset("fig7");
  EXPECT_EQ(f7.base_params.at("gamma_th"), 1e-3);
  EXPECT_EQ(f7.base_config.aperture_w, 0.5);
  EXPECT_EQ(f7.base_config.n_users, 20u);
  EXPECT_EQ(f7.base_config.blocklength, 5u);
  std::set<double> ports, antennas;
  for (const auto& s : f7.series) {
    if (s.metric == "outage_fas") ports.insert(s.params.at("n_ports").get<double>());
    if (s.metric == "outage_mrc") antennas.insert(s.params.at("L").get<double>());
  }
  EXPECT_EQ(ports, (std::set<double>{5, 10, 100}));
  EXPECT_EQ(antennas, (std::set<double>{1, 3, 5}));

  const auto f8 = preset("fig8");
  EXPECT_EQ(f8.base_params.at("gamma_th"), 1e-4);
  EXPECT_EQ(f8.base_params.at("snr_db"), -35.0);
  EXPECT_EQ(f8.base_config.aperture_w, 0.5);
  EXPECT_EQ(f8.base_config.blocklength, 5u);
}

TEST(Presets, Fig7FloorAndNoFloor) {
  auto s = preset("fig7");
  s.axis.values = {60.0};
  const auto r = run_sweep(s);
  const double pi = std::acos(-1.0);
  const double plateau = -std::expm1(-1e-3 * pi * 19.0 / 4.0);
  EXPECT_NEAR(row(r, 60.0, "MRC L=1").value, plateau, 0.05 * plateau);
  EXPECT_LT(row(r, 60.0, "FAS N=10").value, 1e-6);
}

TEST(Presets, Fig2RunsAtReducedTrials) {
  auto s = preset("fig2", 3, 50);
  const auto r = run_sweep(s, 2);
  EXPECT_EQ(r.rows.size(), 4u * s.series.size());
  for (const auto& row : r.rows) EXPECT_FALSE(row.error.has_value()) << row.series;
  EXPECT_EQ(to_csv(r), to_csv(run_sweep(s, 1)));
}

TEST(CustomSpec, OutageVersusPortsFile) {
  const json j = json::parse(read_file(FBLFAS_SOURCE_DIR "/specs/op_vs_n.json"));
  const auto s = j.get<SweepSpec>();
  EXPECT_EQ(s.figure_id, "custom");
  const auto r = run_sweep(s);
  for (const auto& row : r.rows) EXPECT_FALSE(row.error.has_value()) << row.series;
  // Larger apertures decorrelate ports and lower the outage at large N.
  EXPECT_LT(row(r, 100.0, "FAS W=2").value, row(r, 100.0, "FAS W=0.5").value);
  for (const char* w : {"FAS W=0.5", "FAS W=1", "FAS W=2"}) {
    EXPECT_LT(row(r, 100.0, w).value, row(r, 2.0, w).value) << w;
  }
}
