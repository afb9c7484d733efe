#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fblfas/channel_model.hpp"

namespace fblfas {

/// Swept parameter. Any cell parameter name is allowed (see cell_parameter_names).
struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

/// One curve: a metric plus parameter overrides applied on top of the spec's
/// base config and base params.
struct SeriesSpec {
  std::string name;
  std::string metric;
  nlohmann::json params = nlohmann::json::object();
};

struct McSettings {
  std::size_t n_trials = 2000;
  std::uint64_t seed = 0;
};

struct SweepSpec {
  std::string figure_id = "custom";
  SystemConfig base_config;
  nlohmann::json base_params = nlohmann::json::object();
  SweepAxis axis;
  std::vector<SeriesSpec> series;
  std::optional<McSettings> mc;

  /// Throws InvalidArgument: empty or non-monotone axis, no series, unknown
  /// metric or parameter, MC metric without mc settings.
  void validate() const;
};

void to_json(nlohmann::json& j, const SweepSpec& s);
void from_json(const nlohmann::json& j, SweepSpec& s);

struct SweepRow {
  double axis_value = 0.0;
  std::string series;
  double value = 0.0;
  std::optional<double> raw_value;
  std::optional<double> std_error;
  std::optional<std::string> error;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // axis-major, series-minor
  double runtime_ms = 0.0;
};

/// Metric names understood by run_sweep.
const std::vector<std::string>& metric_names();
/// Parameter names accepted in base_params, series params and as axis names.
const std::vector<std::string>& cell_parameter_names();

/// Evaluates every (axis value, series) cell. Cell failures become rows with
/// an error message; the sweep itself only throws for an invalid spec.
SweepResult run_sweep(const SweepSpec& spec, std::size_t workers = 1);

/// Header axis,axis_value,series,value,raw_value,stderr. Failed cells print
/// "error" in the value column.
std::string to_csv(const SweepResult& result);

/// Spec echo plus rows. runtime_ms is included only on request so the default
/// envelope is byte-reproducible.
nlohmann::json to_json_envelope(const SweepResult& result, bool include_runtime = false);

const std::vector<std::string>& preset_names();

/// Figure preset with the caption parameters. n_trials = 0 keeps the
/// preset's own trial count.
SweepSpec preset(std::string_view figure_id, std::uint64_t seed = 0, std::size_t n_trials = 0);

}  // namespace fblfas
