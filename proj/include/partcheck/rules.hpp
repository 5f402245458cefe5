#pragma once

#include "partcheck/flow.hpp"

#include <optional>
#include <string>
#include <vector>

namespace partcheck {

enum class RuleId { BP_R1, BP_R2, BP_R3 };

/// "BP-R1" etc.
const char *to_string(RuleId r);
std::optional<RuleId> parse_rule(std::string_view s);

/// Short description and fix guidance for `explain`.
std::string explain(RuleId r);

struct RuleConfig {
  bool refined = false;
  bool extended_r2 = false;
  bool deep_pointers = false;
  bool operator==(const RuleConfig &) const = default;
};

struct Finding {
  RuleId rule = RuleId::BP_R1;
  SourceLocation location;
  std::string entry_function;
  ParamBinding param;
  std::string message;
  /// Source first, flagged statement last.
  std::vector<SourceLocation> trace;
  /// "F1", "F2" or "F3" when a refinement filter matched.
  std::optional<std::string> suppressed_by;
  /// Id of the flagged node in its graph.
  int node = -1;

  bool operator==(const Finding &) const = default;
};

/// Sort order of reports: file, line, column, rule, then the rest. Total:
/// findings that differ never tie.
bool finding_less(const Finding &a, const Finding &b);

/// Baseline rule check of one graph.
std::vector<Finding> detect(const FlowGraph &graph, const ApiCatalog &catalog,
                            const RuleConfig &config);

/// Marks findings matched by a refinement filter; identity unless
/// `config.refined`. Nothing is dropped.
std::vector<Finding> apply_filters(std::vector<Finding> findings, const FlowGraph &graph,
                                   const RuleConfig &config);

/// Loop-bounded writes into fixed-size buffers; empty unless
/// `config.extended_r2`.
std::vector<Finding> extended_r2(const FlowGraph &graph, const RuleConfig &config);

/// detect + extended_r2 + apply_filters, deduplicated per (rule, location,
/// param) and sorted.
std::vector<Finding> check_graph(const FlowGraph &graph, const ApiCatalog &catalog,
                                 const RuleConfig &config);

} // namespace partcheck
