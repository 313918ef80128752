#include "starflow/config.hpp"

#include <yaml-cpp/yaml.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"
#include "starflow/error.hpp"
#include "starflow/series_io.hpp"

namespace starflow {
namespace {

using json = nlohmann::ordered_json;

template <class T>
T scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ConfigError(key + ": expected a scalar value");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(key + ": cannot convert '" + node.Scalar() + "'");
  }
}

int integer(const YAML::Node& node, const std::string& key) {
  const double v = scalar<double>(node, key);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + ": expected an integer");
  return static_cast<int>(v);
}

Exec exec_from_string(const std::string& s) {
  if (s == "serial") return Exec::serial;
  if (s == "parallel") return Exec::parallel;
  throw ConfigError("exec: expected serial or parallel, got '" + s + "'");
}

const char* to_string(Exec e) { return e == Exec::serial ? "serial" : "parallel"; }

using Setter = std::function<void(RunConfig&, const YAML::Node&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"alpha", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.flow.alpha = scalar<double>(n, k); }},
      {"normalized", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.flow.normalized = scalar<bool>(n, k); }},
      {"grid", [](RunConfig& c, const YAML::Node& n, const std::string& k) {
         try {
           c.flow.grid.mode = grid_mode_from_string(scalar<std::string>(n, k));
         } catch (const ConfigError&) {
           throw;
         } catch (const Error& e) {
           throw ConfigError(k + ": " + e.what());
         }
       }},
      {"n", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.flow.grid.n = integer(n, k); }},
      {"n_polar", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.flow.grid.n_polar = integer(n, k); }},
      {"n_azimuth", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.flow.grid.n_azimuth = integer(n, k); }},
      {"t_end", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.flow.t_end = scalar<double>(n, k); }},
      {"cfl_safety", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.flow.cfl_safety = scalar<double>(n, k); }},
      {"max_steps", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.flow.max_steps = scalar<long>(n, k); }},
      {"r_min_floor", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.flow.r_min_floor = scalar<double>(n, k); }},
      {"output_interval", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.flow.output_interval = scalar<double>(n, k); }},
      {"sample_times", [](RunConfig& c, const YAML::Node& n, const std::string& k) {
         if (!n.IsSequence()) throw ConfigError(k + ": expected a list of times");
         c.flow.sample_times.clear();
         for (const YAML::Node& item : n) c.flow.sample_times.push_back(scalar<double>(item, k));
       }},
      {"exec", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.flow.exec = exec_from_string(scalar<std::string>(n, k)); }},
      {"shape", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.shape.kind = shape_kind_from_string(scalar<std::string>(n, k)); }},
      {"radius", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.shape.radius = scalar<double>(n, k); }},
      {"eps", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.shape.eps = scalar<double>(n, k); }},
      {"mode", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.shape.mode = integer(n, k); }},
      {"offset", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.shape.offset = scalar<double>(n, k); }},
      {"elongation", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.shape.elongation = scalar<double>(n, k); }},
      {"harmonics", [](RunConfig& c, const YAML::Node& n, const std::string& k) {
         if (!n.IsSequence()) throw ConfigError(k + ": expected a list of [l, m, coeff]");
         c.shape.harmonics.clear();
         for (const YAML::Node& item : n) {
           if (!item.IsSequence() || item.size() != 3) throw ConfigError(k + ": each entry must be [l, m, coeff]");
           c.shape.harmonics.push_back({integer(item[0], k), integer(item[1], k), scalar<double>(item[2], k)});
         }
       }},
  };
  return table;
}

std::string format_list(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + format_double(values[i]);
  return out + "]";
}

}  // namespace

void finalize_config(RunConfig& config) {
  GridSpec& g = config.flow.grid;
  if (g.mode == GridMode::full2d && g.n_azimuth == 0) g.n_azimuth = 2 * g.n_polar;
  config.flow.validate();
  try {
    SphereGrid probe(g);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  config.shape.validate();
  config.warnings.clear();
  if (config.flow.normalized && config.flow.alpha < 2.0) {
    config.warnings.push_back("normalized flow with alpha < 2: convergence to a round sphere is only "
                              "guaranteed for alpha >= 2");
  }
}

RunConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: malformed YAML: ") + e.what());
  }
  RunConfig config;
  if (root.IsNull()) {
    finalize_config(config);
    return config;
  }
  if (!root.IsMap()) throw ConfigError("config: top level must be a mapping of flat keys");
  for (const auto& entry : root) {
    const std::string key = entry.first.as<std::string>();
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("config: unknown key '" + key + "'");
    it->second(config, entry.second, key);
  }
  finalize_config(config);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_to_yaml(const RunConfig& c) {
  std::ostringstream out;
  const FlowConfig& f = c.flow;
  out << "alpha: " << format_double(f.alpha) << '\n'
      << "normalized: " << (f.normalized ? "true" : "false") << '\n'
      << "grid: " << to_string(f.grid.mode) << '\n'
      << "n: " << f.grid.n << '\n'
      << "n_polar: " << f.grid.n_polar << '\n'
      << "n_azimuth: " << f.grid.n_azimuth << '\n'
      << "t_end: " << format_double(f.t_end) << '\n'
      << "cfl_safety: " << format_double(f.cfl_safety) << '\n'
      << "max_steps: " << f.max_steps << '\n'
      << "r_min_floor: " << format_double(f.r_min_floor) << '\n'
      << "output_interval: " << format_double(f.output_interval) << '\n'
      << "sample_times: " << format_list(f.sample_times) << '\n'
      << "exec: " << to_string(f.exec) << '\n'
      << "shape: " << to_string(c.shape.kind) << '\n'
      << "radius: " << format_double(c.shape.radius) << '\n'
      << "eps: " << format_double(c.shape.eps) << '\n'
      << "mode: " << c.shape.mode << '\n'
      << "offset: " << format_double(c.shape.offset) << '\n'
      << "elongation: " << format_double(c.shape.elongation) << '\n'
      << "harmonics: [";
  for (std::size_t i = 0; i < c.shape.harmonics.size(); ++i) {
    const Harmonic& h = c.shape.harmonics[i];
    out << (i ? ", " : "") << '[' << h.l << ", " << h.m << ", " << format_double(h.coeff) << ']';
  }
  out << "]\n";
  return out.str();
}

namespace {

json config_json(const RunConfig& c) {
  const FlowConfig& f = c.flow;
  json h = json::array();
  for (const Harmonic& x : c.shape.harmonics) h.push_back({x.l, x.m, x.coeff});
  return json{{"alpha", f.alpha},
              {"normalized", f.normalized},
              {"grid", to_string(f.grid.mode)},
              {"n", f.grid.n},
              {"n_polar", f.grid.n_polar},
              {"n_azimuth", f.grid.n_azimuth},
              {"t_end", f.t_end},
              {"cfl_safety", f.cfl_safety},
              {"max_steps", f.max_steps},
              {"r_min_floor", f.r_min_floor},
              {"output_interval", f.output_interval},
              {"sample_times", f.sample_times},
              {"exec", to_string(f.exec)},
              {"shape", to_string(c.shape.kind)},
              {"radius", c.shape.radius},
              {"eps", c.shape.eps},
              {"mode", c.shape.mode},
              {"offset", c.shape.offset},
              {"elongation", c.shape.elongation},
              {"harmonics", h}};
}

}  // namespace

std::string manifest_to_json(const RunManifest& m) {
  json j{{"command", m.command},
         {"version", m.version},
         {"started_at", m.started_at},
         {"finished_at", m.finished_at},
         {"stop_reason", m.stop_reason},
         {"steps", m.steps},
         {"final_t", m.final_t},
         {"outputs", m.outputs},
         {"config", config_json(m.config)},
         {"warnings", m.config.warnings}};
  return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << manifest_to_json(manifest);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("manifest '" + path.string() + "': " + e.what());
  }
  RunManifest m;
  try {
    m.command = j.value("command", "");
    m.version = j.value("version", "");
    m.started_at = j.value("started_at", "");
    m.finished_at = j.value("finished_at", "");
    m.stop_reason = j.value("stop_reason", "");
    m.steps = j.value("steps", 0L);
    m.final_t = j.value("final_t", 0.0);
    m.outputs = j.value("outputs", std::vector<std::string>{});
    // Route the config block through the YAML loader so both share one schema.
    const json& c = j.at("config");
    std::ostringstream yaml;
    for (const auto& [key, value] : c.items()) yaml << key << ": " << value.dump() << '\n';
    m.config = parse_config(yaml.str());
  } catch (const json::exception& e) {
    throw IoError("manifest '" + path.string() + "': " + e.what());
  }
  return m;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace starflow
