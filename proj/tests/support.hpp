#pragma once

#include "partcheck/bench.hpp"
#include "partcheck/parser.hpp"

#include <deque>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace partcheck::testing {

std::string source_dir();
std::string fixture(const std::string &name);
std::string corpus_dir();
/// Every fixture directory, then every corpus case directory.
std::vector<std::string> all_case_dirs();

/// Parsed files of one directory plus every flow graph of every root.
struct Program {
  std::deque<Ast> asts;
  std::vector<ParamRoot> roots;
  std::vector<FlowGraph> graphs;
};

Program load_program(const std::string &dir, const FlowOptions &options = {});

ScanReport scan(const std::string &path, const RuleConfig &rules = {}, int jobs = 1);

/// "file:line RULE" for every finding not suppressed, in report order.
std::vector<std::string> active_lines(const ScanReport &report);
/// The same for suppressed findings, with " Fn" appended.
std::vector<std::string> suppressed_lines(const ScanReport &report);
/// Expected lines of a case's expect.txt in the same format.
std::vector<std::string> expected_lines(const std::string &dir);

Ast parse_text(const std::string &text, const std::string &path = "t.c");

/// Flagged (rule, node) pairs found by enumerating paths directly.
/// Output graphs: a sink is violating when some source reaches it and no
/// source-to-sink path passes an encryption node; with `simple_paths` only
/// simple paths are enumerated (equivalent on acyclic graphs), otherwise all
/// walks up to state repetition. Input graphs: a sink reached by a source
/// with no dominating guard and no matched allocation. Shared graphs: every
/// node with an ISC kind.
std::set<std::pair<RuleId, int>> brute_force(const FlowGraph &g, bool simple_paths);

std::set<std::pair<RuleId, int>> flagged(const std::vector<Finding> &findings);

/// A graph with random facts and edges; tags are derived from the facts.
FlowGraph random_graph(std::mt19937 &rng, View view, int nodes, bool acyclic);

} // namespace partcheck::testing
