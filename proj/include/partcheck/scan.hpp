#pragma once

#include "partcheck/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace partcheck {

struct ScanOptions {
  /// Files or directories. Each argument is analysed as one program; files
  /// are named relative to a directory argument, or by file name.
  std::vector<std::string> paths;
  RuleConfig rules;
  /// Paths recorded in the config echo; contents are in the fields below.
  std::optional<std::string> catalog_path;
  std::optional<std::string> annotations_path;
  ApiCatalog catalog = default_catalog();
  bool custom_catalog = false;
  std::vector<Annotation> annotations;
  /// 1 runs the serial reference path; 0 uses every core.
  int jobs = 0;
  bool timing = false;
  bool dump_flows = false;
};

struct ScanResult {
  ScanReport report;
  /// Graph dumps when requested, in root order.
  std::string flow_dump;
  /// Lines of code analysed.
  size_t loc = 0;
};

/// Steps 1 to 5 over every path. Throws IoError (missing path), ConfigError.
ScanResult run_scan(const ScanOptions &options);

/// Number of worker threads `jobs` resolves to.
int resolve_jobs(int jobs);

} // namespace partcheck
