#include <filesystem>
#include <string>

#include "doctest.h"
#include "starflow/config.hpp"
#include "starflow/error.hpp"

using namespace starflow;
namespace fs = std::filesystem;

namespace {

std::string message_of(const std::string& yaml) {
  try {
    parse_config(yaml);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config takes the documented defaults") {
  const RunConfig c = parse_config("alpha: 2\nshape: sphere\n");
  CHECK(c.flow.alpha == 2.0);
  CHECK(c.flow.normalized);
  CHECK(c.flow.grid.mode == GridMode::axisymmetric);
  CHECK(c.flow.grid.n == 2);
  CHECK(c.flow.grid.n_polar == 128);
  CHECK(c.flow.cfl_safety == 0.2);
  CHECK(c.flow.t_end == 10.0);
  CHECK(c.shape.kind == ShapeKind::sphere);
  CHECK(c.warnings.empty());
}

TEST_CASE("unknown keys and bad values name the key") {
  CHECK(message_of("alpha_: 2\n").find("alpha_") != std::string::npos);
  CHECK(message_of("cfl_safety: 3\n").find("cfl_safety") != std::string::npos);
  CHECK(message_of("n_polar: 12.5\n").find("n_polar") != std::string::npos);
  CHECK(message_of("alpha: fast\n").find("alpha") != std::string::npos);
  CHECK(message_of("shape: torus\n").find("torus") != std::string::npos);
  CHECK(message_of("radius: -1\n").find("radius") != std::string::npos);
  CHECK(message_of("harmonics: [[1, 0]]\n").find("harmonics") != std::string::npos);
  CHECK(message_of("- 1\n- 2\n").find("mapping") != std::string::npos);
  CHECK(message_of("alpha: [1\n").find("YAML") != std::string::npos);
}

TEST_CASE("normalised flow with alpha < 2 is accepted with a warning") {
  const RunConfig c = parse_config("alpha: -1\n");
  REQUIRE(c.warnings.size() == 1);
  CHECK(c.warnings[0].find("alpha >= 2") != std::string::npos);
  const RunConfig u = parse_config("alpha: -1\nnormalized: false\n");
  CHECK(u.warnings.empty());
}

TEST_CASE("full2d defaults the azimuthal resolution") {
  const RunConfig c = parse_config("grid: full2d\nn_polar: 32\n# comment\n");
  CHECK(c.flow.grid.n_azimuth == 64);
  CHECK_THROWS_AS(parse_config("grid: full2d\nn: 3\n"), ConfigError);
}

TEST_CASE("YAML echo round-trips") {
  const RunConfig c = parse_config(
      "alpha: 2.5\nnormalized: false\nt_end: 3\nsample_times: [0.5, 1.25]\nshape: custom_harmonics\n"
      "harmonics: [[2, 0, 0.05], [1, 0, -0.1]]\nexec: parallel\nn: 3\n");
  const RunConfig back = parse_config(config_to_yaml(c));
  CHECK(back.flow.alpha == 2.5);
  CHECK_FALSE(back.flow.normalized);
  CHECK(back.flow.sample_times == c.flow.sample_times);
  CHECK(back.flow.exec == Exec::parallel);
  CHECK(back.flow.grid.n == 3);
  REQUIRE(back.shape.harmonics.size() == 2);
  CHECK(back.shape.harmonics[1].coeff == -0.1);
  CHECK(config_to_yaml(back) == config_to_yaml(c));
}

TEST_CASE("manifest round-trips the full configuration") {
  RunManifest m;
  m.config = parse_config("alpha: 3\nshape: offcenter_ovaloid\noffset: 0.3\nelongation: 1.2\nt_end: 0.123456789\n");
  m.command = "starflow run";
  m.version = "test";
  m.stop_reason = "reached_t_end";
  m.steps = 42;
  m.outputs = {"a.csv"};
  const fs::path p = fs::temp_directory_path() / "starflow_manifest_test.json";
  write_manifest(m, p);
  const RunManifest back = read_manifest(p);
  CHECK(back.steps == 42);
  CHECK(back.stop_reason == "reached_t_end");
  CHECK(back.outputs == m.outputs);
  CHECK(config_to_yaml(back.config) == config_to_yaml(m.config));
  fs::remove(p);
  CHECK_THROWS_AS(read_manifest(p), IoError);
}

TEST_CASE("config files") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), IoError);
  const RunConfig c = load_config(fs::path(STARFLOW_TEST_DATA) / "example.yaml");
  CHECK(c.shape.kind == ShapeKind::perturbed_sphere);
  CHECK(c.shape.eps == 0.2);
}
