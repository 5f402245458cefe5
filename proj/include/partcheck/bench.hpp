#pragma once

#include "partcheck/scan.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace partcheck {

enum class Category { Basic, InProcedure, Variadic, ControlFlow, Combined };

const char *to_string(Category c);
std::optional<Category> parse_category(std::string_view s);

struct Expected {
  std::string file;
  int line = 0;
  RuleId rule = RuleId::BP_R1;
  auto operator<=>(const Expected &) const = default;
};

struct GroundTruth {
  std::string name;
  Category category = Category::Basic;
  /// Issue class of the case: "unencrypted-output", "input-validation",
  /// "shared-memory" or "no-issue".
  std::string issue_class;
  std::vector<Expected> expected;
  bool expected_empty = false;
  /// The expected finding is a documented miss of the baseline rules.
  bool known_fn = false;
};

struct BenchCase {
  std::string dir;
  /// Source files relative to `dir`, sorted.
  std::vector<std::string> files;
  GroundTruth truth;
};

/// One case per subdirectory, sorted by name. Throws CorpusError.
std::vector<BenchCase> load_corpus(const std::string &dir);

/// Parses one expect file. `lines_of(file)` returns the line count of a case
/// file or -1 if it does not exist. Throws CorpusError naming `case_name`.
GroundTruth parse_expect(const std::string &case_name, const std::string &text,
                         const std::function<int(const std::string &)> &lines_of);

struct RuleMetrics {
  int ni = 0;
  int n = 0;
  int tp = 0;
  /// nullopt when nothing was reported.
  std::optional<double> precision() const;
  double recall() const;
  double f1() const;
};

struct Metrics {
  RuleMetrics rules[3];
  RuleMetrics total;
};

/// Line-exact matching on (file, line, rule); suppressed findings are not
/// counted. `results[i]` belongs to `truth[i]`.
Metrics score(const std::vector<std::vector<Finding>> &results,
              const std::vector<GroundTruth> &truth);

struct TimingRow {
  std::string name;
  size_t loc = 0;
  double flow_ms = 0;
  double rules_ms = 0;
};

struct BenchRun {
  std::vector<BenchCase> cases;
  std::vector<std::vector<Finding>> results;
  std::vector<TimingRow> timing;
  Metrics metrics;
};

/// Scans every case (in parallel across cases, each case serially) and
/// scores the results.
BenchRun run_bench(const std::string &corpus_dir, const RuleConfig &rules, int jobs = 0);

/// Text table with the reference target numbers alongside.
std::string metrics_table(const Metrics &m, bool refined);
std::string metrics_csv(const Metrics &m);
std::string timing_csv(const std::vector<TimingRow> &rows);

} // namespace partcheck
