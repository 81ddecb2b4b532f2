#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sbm {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// 17 significant digit rendering with '.' as decimal point,
/// independent of the global locale.  NaN and infinities print as nan, inf, -inf.
std::string format_double(double x);

/// Numeric table with named columns, stored by row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string to_csv(const Table& t);
/// Array of records {column: value}; non-finite values become null.
nlohmann::json to_json(const Table& t);

/// Writes bytes exactly (binary mode).  Throws ConfigError on failure.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// {command, flags, seed, artifact_version, timestamp}.  The timestamp is
/// UTC ISO 8601; $SOURCE_DATE_EPOCH overrides the clock.
nlohmann::json make_manifest(const std::string& command, const std::vector<std::string>& flags,
                             std::uint64_t seed);

}  // namespace sbm
