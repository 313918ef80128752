#include "starflow/series_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "starflow/error.hpp"

namespace starflow {
namespace {

constexpr std::size_t kColumns = 12;

std::array<double*, kColumns> columns(DiagnosticsSample& s) {
  return {&s.t, &s.r_min, &s.r_max, &s.ratio, &s.u_min, &s.u_max,
          &s.F_min, &s.F_max, &s.H_max, &s.A2_max, &s.gradmax, &s.dt};
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw IoError("cannot parse '" + std::string(text) + "' as a number");
  }
  return value;
}

void write_series(const DiagnosticsSeries& series, std::ostream& out) {
  out << kSeriesHeader << '\n';
  for (DiagnosticsSample s : series) {
    const auto cols = columns(s);
    for (std::size_t c = 0; c < kColumns; ++c) {
      if (c) out << ',';
      out << format_double(*cols[c]);
    }
    out << '\n';
  }
}

DiagnosticsSeries read_series(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("series: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSeriesHeader) throw IoError("series: unexpected header '" + line + "'");
  DiagnosticsSeries series;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    DiagnosticsSample s;
    const auto cols = columns(s);
    std::size_t start = 0;
    for (std::size_t c = 0; c < kColumns; ++c) {
      const std::size_t comma = line.find(',', start);
      const bool last = c + 1 == kColumns;
      if (last != (comma == std::string::npos)) {
        throw IoError("series: row " + std::to_string(row) + " does not have " + std::to_string(kColumns) +
                      " columns");
      }
      const std::string_view field(line.data() + start, (last ? line.size() : comma) - start);
      try {
        *cols[c] = parse_double(field);
      } catch (const IoError& e) {
        throw IoError("series: row " + std::to_string(row) + ": " + e.what());
      }
      start = comma + 1;
    }
    series.push_back(s);
  }
  return series;
}

void emit_series(const DiagnosticsSeries& series, const std::filesystem::path& path) {
  if (series.empty()) throw DomainError("emit_series: empty series");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_series(series, out);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

DiagnosticsSeries parse_series(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return read_series(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace starflow
