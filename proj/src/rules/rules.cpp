#include "partcheck/rules.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace partcheck {

const char *to_string(RuleId r) {
  switch (r) {
  case RuleId::BP_R1:
    return "BP-R1";
  case RuleId::BP_R2:
    return "BP-R2";
  case RuleId::BP_R3:
    return "BP-R3";
  }
  return "?";
}

std::optional<RuleId> parse_rule(std::string_view s) {
  if (s == "BP-R1" || s == "BP_R1" || s == "R1")
    return RuleId::BP_R1;
  if (s == "BP-R2" || s == "BP_R2" || s == "R2")
    return RuleId::BP_R2;
  if (s == "BP-R3" || s == "BP_R3" || s == "R3")
    return RuleId::BP_R3;
  return std::nullopt;
}

std::string explain(RuleId r) {
  switch (r) {
  case RuleId::BP_R1:
    return "BP-R1  unencrypted data output\n"
           "Data produced inside the TA reaches an output parameter (or an in/out\n"
           "parameter) on a path that passes through no encryption call. The normal\n"
           "world can read it in the clear.\n"
           "Fix: encrypt the data before writing it to the output buffer, or stop\n"
           "returning it.\n";
  case RuleId::BP_R2:
    return "BP-R2  input validation weakness\n"
           "Data from an input parameter (or an in/out parameter) controls an array\n"
           "index or a memory copy, and no check on that data dominates the access.\n"
           "Copies into a buffer allocated with the same input-derived size are\n"
           "accepted.\n"
           "Fix: add a bounds check against the destination capacity before the\n"
           "access.\n";
  case RuleId::BP_R3:
    return "BP-R3  direct usage of shared memory\n"
           "A shared memory parameter is aliased (shallow copy) or used in place.\n"
           "The normal world can change the buffer between check and use.\n"
           "Fix: deep-copy the shared buffer into TA memory once, then work on the\n"
           "copy only.\n";
  }
  return {};
}

bool finding_less(const Finding &a, const Finding &b) {
  return std::tie(a.location.file, a.location.line, a.location.column, a.rule,
                  a.param.index, a.entry_function, a.param.command_id, a.message, a.node,
                  a.suppressed_by, a.trace, a.param) <
         std::tie(b.location.file, b.location.line, b.location.column, b.rule,
                  b.param.index, b.entry_function, b.param.command_id, b.message, b.node,
                  b.suppressed_by, b.trace, b.param);
}

namespace {

// Shortest path (by edges) from any of `from` to `to`; empty if none.
std::vector<int> shortest_path(const FlowGraph &g, const std::vector<int> &from, int to) {
  auto succ = g.successors();
  std::vector<int> prev(g.nodes.size(), -2);
  std::deque<int> q;
  for (int s : from) {
    if (prev[static_cast<size_t>(s)] == -2) {
      prev[static_cast<size_t>(s)] = -1;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    if (x == to) {
      std::vector<int> path;
      for (int c = x; c != -1; c = prev[static_cast<size_t>(c)])
        path.push_back(c);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int y : succ[static_cast<size_t>(x)]) {
      if (prev[static_cast<size_t>(y)] == -2) {
        prev[static_cast<size_t>(y)] = x;
        q.push_back(y);
      }
    }
  }
  return {};
}

std::vector<int> graph_sources(const FlowGraph &g) {
  std::vector<int> out;
  for (const auto &n : g.nodes)
    if (n.tags & tag::Source)
      out.push_back(n.id);
  return out;
}

Finding make_finding(const FlowGraph &g, RuleId rule, const FlowNode &n, std::string what,
                     const std::vector<int> &path) {
  Finding f;
  f.rule = rule;
  f.location = n.loc;
  f.entry_function = g.binding.entry_function;
  f.param = g.binding;
  f.message = std::move(what) + " (param " + std::to_string(g.binding.index) + ")";
  f.node = n.id;
  for (int p : path)
    f.trace.push_back(g.nodes[static_cast<size_t>(p)].loc);
  if (f.trace.empty() || f.trace.back() != n.loc)
    f.trace.push_back(n.loc);
  return f;
}

std::vector<Finding> detect_output(const FlowGraph &g) {
  std::vector<Finding> out;
  const auto sources = graph_sources(g);
  std::vector<int> encs;
  for (const auto &n : g.nodes)
    if (n.tags & tag::SC)
      encs.push_back(n.id);
  for (const auto &n : g.nodes) {
    if (!(n.tags & tag::CS))
      continue;
    // Flagged when some source reaches the sink on a route that avoids every
    // encryption node.
    std::vector<int> bad;
    for (int s : sources) {
      if (!reaches(g, s, n.id))
        continue;
      bool sanitized = false;
      for (int e : encs)
        if (reaches(g, s, e) && reaches(g, e, n.id)) {
          sanitized = true;
          break;
        }
      if (!sanitized)
        bad.push_back(s);
    }
    if (bad.empty())
      continue;
    out.push_back(make_finding(g, RuleId::BP_R1, n,
                               "in-TEE data written to output parameter without encryption",
                               shortest_path(g, bad, n.id)));
  }
  return out;
}

std::vector<Finding> detect_input(const FlowGraph &g) {
  std::vector<Finding> out;
  const auto sources = graph_sources(g);
  for (const auto &n : g.nodes) {
    if (!(n.tags & tag::CS))
      continue;
    bool guarded = false;
    for (int gd : n.guarded_by)
      if (g.nodes[static_cast<size_t>(gd)].tags & tag::SC)
        guarded = true;
    if (guarded)
      continue;
    if (n.op == OpKind::Call && n.alloc_matched)
      continue;
    if (std::none_of(sources.begin(), sources.end(),
                     [&](int s) { return reaches(g, s, n.id); }))
      continue;
    std::string what = n.op == OpKind::Call
                           ? "input buffer used in memory copy without bounds check"
                           : "input-derived array access without bounds check";
    out.push_back(make_finding(g, RuleId::BP_R2, n, what, shortest_path(g, sources, n.id)));
  }
  return out;
}

std::vector<Finding> detect_shared(const FlowGraph &g) {
  std::vector<Finding> out;
  const auto sources = graph_sources(g);
  for (const auto &n : g.nodes) {
    if (!(n.tags & tag::ISC))
      continue;
    std::string what;
    switch (n.isc) {
    case IscKind::ShallowCopy:
      what = "shallow copy of shared memory buffer";
      break;
    case IscKind::SizeRead:
      what = "variable assigned from shared memory";
      break;
    default:
      what = "shared memory used directly";
      break;
    }
    out.push_back(make_finding(g, RuleId::BP_R3, n, what, shortest_path(g, sources, n.id)));
  }
  return out;
}

} // namespace

std::vector<Finding> detect(const FlowGraph &graph, const ApiCatalog &catalog,
                            const RuleConfig &config) {
  (void)catalog;
  (void)config;
  switch (graph.view) {
  case View::Output:
    return detect_output(graph);
  case View::Input:
    return detect_input(graph);
  case View::Shared:
    return detect_shared(graph);
  }
  return {};
}

std::vector<Finding> apply_filters(std::vector<Finding> findings, const FlowGraph &graph,
                                   const RuleConfig &config) {
  if (!config.refined)
    return findings;
  for (auto &f : findings) {
    if (f.suppressed_by || f.node < 0 || f.node >= static_cast<int>(graph.nodes.size()))
      continue;
    const FlowNode &n = graph.nodes[static_cast<size_t>(f.node)];
    if (f.rule == RuleId::BP_R1 && (n.length_value || n.param_value))
      f.suppressed_by = "F1";
    else if (f.rule == RuleId::BP_R2 && n.own_size_index)
      f.suppressed_by = "F2";
    else if (f.rule == RuleId::BP_R3 && n.isc == IscKind::SizeRead)
      f.suppressed_by = "F3";
  }
  return findings;
}

std::vector<Finding> extended_r2(const FlowGraph &graph, const RuleConfig &config) {
  std::vector<Finding> out;
  if (!config.extended_r2 || graph.view != View::Input)
    return out;
  const auto sources = graph_sources(graph);
  for (const auto &n : graph.nodes) {
    if (n.loop_cond < 0)
      continue;
    bool guarded = false;
    for (int gd : n.guarded_by)
      if (gd != n.loop_cond)
        guarded = true;
    if (guarded)
      continue;
    auto path = shortest_path(graph, sources, n.loop_cond);
    path.push_back(n.id);
    out.push_back(make_finding(
        graph, RuleId::BP_R2, n,
        "loop index bounded by input used to write fixed-size buffer without bounds check",
        path));
  }
  return out;
}

std::vector<Finding> check_graph(const FlowGraph &graph, const ApiCatalog &catalog,
                                 const RuleConfig &config) {
  auto found = detect(graph, catalog, config);
  auto ext = extended_r2(graph, config);
  found.insert(found.end(), ext.begin(), ext.end());
  found = apply_filters(std::move(found), graph, config);
  // One finding per (rule, location, param); a surviving one wins over a
  // suppressed one.
  std::map<std::tuple<RuleId, std::string, int, int, int>, size_t> seen;
  std::vector<Finding> out;
  for (auto &f : found) {
    auto key = std::make_tuple(f.rule, f.location.file, f.location.line, f.location.column,
                               f.param.index);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, out.size());
      out.push_back(std::move(f));
    } else if (out[it->second].suppressed_by && !f.suppressed_by) {
      out[it->second] = std::move(f);
    }
  }
  std::sort(out.begin(), out.end(), finding_less);
  return out;
}

} // namespace partcheck
