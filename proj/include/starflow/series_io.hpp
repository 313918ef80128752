#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "starflow/diagnostics.hpp"

namespace starflow {

inline constexpr std::string_view kSeriesHeader =
    "t,r_min,r_max,ratio,u_min,u_max,F_min,F_max,H_max,A2_max,gradmax,dt";

/// 17 significant digits, locale independent ("nan" and "inf" spelled out).
std::string format_double(double value);

/// Parses the whole string as a double; throws IoError otherwise.
double parse_double(std::string_view text);

void write_series(const DiagnosticsSeries& series, std::ostream& out);
DiagnosticsSeries read_series(std::istream& in);

/// CSV with header kSeriesHeader and one newline-terminated row per sample.
/// Throws DomainError for an empty series and IoError naming the path on failure.
void emit_series(const DiagnosticsSeries& series, const std::filesystem::path& path);
DiagnosticsSeries parse_series(const std::filesystem::path& path);

}  // namespace starflow
