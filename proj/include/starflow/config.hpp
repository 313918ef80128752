#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "starflow/flow.hpp"
#include "starflow/shapes.hpp"

namespace starflow {

/// Everything needed to reproduce one `run`: flow controls and initial shape.
struct RunConfig {
  FlowConfig flow;
  InitialShapeSpec shape;
  /// Non-fatal remarks produced while loading (e.g. normalised flow with alpha < 2).
  std::vector<std::string> warnings;
};

/// Flat YAML mapping; unknown keys and out-of-range values raise ConfigError
/// naming the key. Missing keys take the documented defaults.
RunConfig parse_config(const std::string& yaml_text);
RunConfig load_config(const std::filesystem::path& path);

/// Fills derived defaults (n_azimuth = 2 n_polar for full2d), validates, and
/// collects warnings.
void finalize_config(RunConfig& config);

/// Flat YAML text that parse_config maps back to the same configuration.
std::string config_to_yaml(const RunConfig& config);

struct RunManifest {
  RunConfig config;
  std::string command;
  std::string version;
  std::string started_at;
  std::string finished_at;
  std::string stop_reason;
  long steps = 0;
  double final_t = 0.0;
  std::vector<std::string> outputs;
};

/// JSON text; the config block uses the same keys as the YAML schema.
std::string manifest_to_json(const RunManifest& manifest);
void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

/// Current UTC time as ISO 8601.
std::string utc_timestamp();

}  // namespace starflow
