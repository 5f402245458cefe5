#pragma once

#include "partcheck/rules.hpp"

#include <optional>
#include <string>
#include <vector>

namespace partcheck {

inline constexpr const char *kToolName = "partcheck";
inline constexpr const char *kToolVersion = "0.1.0";

struct ConfigEcho {
  std::vector<std::string> paths;
  RuleConfig rules;
  std::optional<std::string> catalog;
  std::optional<std::string> annotations;
  bool operator==(const ConfigEcho &) const = default;
};

struct Timing {
  double parse_ms = 0;
  double flow_ms = 0;
  double rules_ms = 0;
  bool operator==(const Timing &) const = default;
};

struct ScanReport {
  std::string tool_version = kToolVersion;
  ConfigEcho config;
  /// Sorted by finding_less.
  std::vector<Finding> findings;
  std::vector<Diagnostic> warnings;
  /// Only filled (and emitted) when timing was requested; wall clock is not
  /// reproducible.
  std::optional<Timing> timing;

  size_t active_count() const;
  bool operator==(const ScanReport &) const = default;
};

enum class Format { Text, Json, Sarif };

std::optional<Format> parse_format(std::string_view s);

std::string emit(const ScanReport &report, Format format);

/// Inverse of the JSON emitter. Throws ConfigError on malformed input.
ScanReport parse_report_json(const std::string &text);

/// Structural SARIF 2.1.0 check; returns one message per problem.
std::vector<std::string> validate_sarif(const std::string &text);

/// Writes `data` to `path` ("-" is stdout). Throws IoError.
void write_output(const std::string &path, const std::string &data);

/// 0 without active findings, 1 with.
int exit_code_for(const ScanReport &report);

} // namespace partcheck
