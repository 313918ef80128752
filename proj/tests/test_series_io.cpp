#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "starflow/error.hpp"
#include "starflow/run.hpp"
#include "starflow/series_io.hpp"

using namespace starflow;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("starflow_test_" + name); }

DiagnosticsSample known_sample() {
  DiagnosticsSample s;
  s.t = 0.1;
  s.r_min = 1.0;
  s.r_max = 2.5;
  s.ratio = 2.5;
  s.u_min = 1.0 / 3.0;
  s.u_max = 2.0;
  s.F_min = 1e-20;
  s.F_max = 12345.678;
  s.H_max = -0.0;
  s.A2_max = 6.02214076e23;
  s.gradmax = 5e-324;
  s.dt = 2.0 / 7.0;
  return s;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("golden header and row formatting") {
  std::ostringstream out;
  write_series({known_sample()}, out);
  const std::string golden =
      "t,r_min,r_max,ratio,u_min,u_max,F_min,F_max,H_max,A2_max,gradmax,dt\n"
      "0.10000000000000001,1,2.5,2.5,0.33333333333333331,2,9.9999999999999995e-21,12345.678,-0,"
      "6.0221407599999999e+23,4.9406564584124654e-324,0.2857142857142857\n";
  CHECK(out.str() == golden);
}

TEST_CASE("one sample gives a two-line file and round-trips bit-exactly") {
  const fs::path p = temp_file("one.csv");
  emit_series({known_sample()}, p);
  std::ifstream in(p);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.back() == '\n');
  const DiagnosticsSeries back = parse_series(p);
  REQUIRE(back.size() == 1);
  const DiagnosticsSample a = known_sample(), b = back[0];
  CHECK(same_bits(a.t, b.t));
  CHECK(same_bits(a.u_min, b.u_min));
  CHECK(same_bits(a.H_max, b.H_max));
  CHECK(same_bits(a.gradmax, b.gradmax));
  CHECK(same_bits(a.dt, b.dt));
  fs::remove(p);
}

TEST_CASE("run output round-trips and a unit sphere has ratio exactly 1") {
  FlowConfig c;
  c.grid.n_polar = 32;
  c.t_end = 0.2;
  c.output_interval = 0.02;
  const RunResult r = run(c, ScalarField(build_grid(c.grid), 0.0));
  const fs::path p = temp_file("sphere.csv");
  emit_series(r.series, p);
  const DiagnosticsSeries back = parse_series(p);
  REQUIRE(back.size() == r.series.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back[k].ratio == 1.0);
    CHECK(same_bits(back[k].t, r.series[k].t));
    CHECK(same_bits(back[k].F_min, r.series[k].F_min));
    CHECK(same_bits(back[k].dt, r.series[k].dt));
  }
  fs::remove(p);
}

TEST_CASE("NaN survives the round trip") {
  DiagnosticsSample s = known_sample();
  s.F_min = NAN;
  std::stringstream io;
  write_series({s}, io);
  const DiagnosticsSeries back = read_series(io);
  CHECK(std::isnan(back[0].F_min));
}

TEST_CASE("I/O errors name the path") {
  const fs::path bad = fs::path("/nonexistent_dir_for_starflow") / "x.csv";
  try {
    emit_series({known_sample()}, bad);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
  }
  CHECK_THROWS_AS(parse_series(bad), IoError);
  CHECK_THROWS_AS(emit_series({}, temp_file("empty.csv")), DomainError);
}

TEST_CASE("malformed series are rejected") {
  std::istringstream wrong_header("t,r\n1,2\n");
  CHECK_THROWS_AS(read_series(wrong_header), IoError);
  std::istringstream short_row(std::string(kSeriesHeader) + "\n1,2,3\n");
  CHECK_THROWS_AS(read_series(short_row), IoError);
  std::istringstream junk(std::string(kSeriesHeader) + "\n1,2,3,4,5,6,7,8,9,10,11,1x\n");
  CHECK_THROWS_AS(read_series(junk), IoError);
  CHECK(parse_double("1e-3") == 1e-3);
  CHECK_THROWS_AS(parse_double(" 1"), IoError);
}
