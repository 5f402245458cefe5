#include "support.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace partcheck::testing {

namespace fs = std::filesystem;

std::string source_dir() { return PARTCHECK_SOURCE_DIR; }

std::string fixture(const std::string &name) {
  return source_dir() + "/tests/fixtures/" + name;
}

std::string corpus_dir() { return source_dir() + "/corpus"; }

namespace {

std::vector<std::string> subdirs(const std::string &dir) {
  std::vector<std::string> out;
  for (const auto &e : fs::directory_iterator(dir))
    if (e.is_directory())
      out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

std::vector<std::string> all_case_dirs() {
  auto out = subdirs(source_dir() + "/tests/fixtures");
  auto corpus = subdirs(corpus_dir());
  out.insert(out.end(), corpus.begin(), corpus.end());
  return out;
}

Program load_program(const std::string &dir, const FlowOptions &options) {
  Program p;
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto &e : fs::recursive_directory_iterator(dir)) {
    auto ext = e.path().extension().string();
    if (e.is_regular_file() && (ext == ".c" || ext == ".h"))
      files.emplace_back(fs::relative(e.path(), dir).generic_string(), e.path().string());
  }
  std::sort(files.begin(), files.end());
  std::vector<const Ast *> ptrs;
  for (const auto &[display, full] : files) {
    p.asts.push_back(parse_unit(full, FrontendOptions{}, display));
    ptrs.push_back(&p.asts.back());
  }
  Classification cls = classify_params(ptrs, {});
  p.roots = find_roots(ptrs);
  for (const auto &root : p.roots) {
    std::vector<ParamBinding> mine;
    for (const auto &b : cls.bindings)
      if (b.entry_function == root.fn->name && b.command_id == root.command &&
          b.file == root.ast->path)
        mine.push_back(b);
    auto graphs = build_root_flows(root, mine, ptrs, default_catalog(), options);
    p.graphs.insert(p.graphs.end(), graphs.begin(), graphs.end());
  }
  return p;
}

ScanReport scan(const std::string &path, const RuleConfig &rules, int jobs) {
  ScanOptions o;
  o.paths = {path};
  o.rules = rules;
  o.jobs = jobs;
  return run_scan(o).report;
}

namespace {

std::string line_of(const Finding &f) {
  return f.location.file + ":" + std::to_string(f.location.line) + " " + to_string(f.rule);
}

} // namespace

std::vector<std::string> active_lines(const ScanReport &report) {
  std::vector<std::string> out;
  for (const auto &f : report.findings)
    if (!f.suppressed_by)
      out.push_back(line_of(f));
  return out;
}

std::vector<std::string> suppressed_lines(const ScanReport &report) {
  std::vector<std::string> out;
  for (const auto &f : report.findings)
    if (f.suppressed_by)
      out.push_back(line_of(f) + " " + *f.suppressed_by);
  return out;
}

std::vector<std::string> expected_lines(const std::string &dir) {
  std::ifstream in(dir + "/expect.txt");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line == "CLEAN")
      continue;
    out.push_back(line);
  }
  return out;
}

Ast parse_text(const std::string &text, const std::string &path) {
  return parse_source(SourceUnit::from_text(path, text), FrontendOptions{});
}

namespace {

std::vector<std::vector<int>> adjacency(const FlowGraph &g) {
  std::vector<std::vector<int>> adj(g.nodes.size());
  for (const auto &e : g.edges)
    adj[static_cast<size_t>(e.from)].push_back(e.to);
  return adj;
}

bool is_enc(const FlowNode &n) { return n.cls == CatalogClass::Enc; }

// Every simple path from `at` to `target`; `visit(path)` sees each one.
template <typename Visit>
void simple_paths(const std::vector<std::vector<int>> &adj, int at, int target,
                  std::vector<int> &path, std::vector<char> &on, Visit &&visit) {
  path.push_back(at);
  on[static_cast<size_t>(at)] = 1;
  if (at == target)
    visit(path);
  else
    for (int y : adj[static_cast<size_t>(at)])
      if (!on[static_cast<size_t>(y)])
        simple_paths(adj, y, target, path, on, visit);
  on[static_cast<size_t>(at)] = 0;
  path.pop_back();
}

// Walks from `s`, tracking whether an encryption node was passed. A state
// (node, passed) is expanded once; every walk maps onto these states.
void walks(const FlowGraph &g, const std::vector<std::vector<int>> &adj, int s, int t,
           bool &reached, bool &through_enc) {
  std::set<std::pair<int, bool>> seen;
  std::vector<std::pair<int, bool>> stack{{s, is_enc(g.nodes[static_cast<size_t>(s)])}};
  while (!stack.empty()) {
    auto st = stack.back();
    stack.pop_back();
    if (!seen.insert(st).second)
      continue;
    if (st.first == t) {
      reached = true;
      through_enc = through_enc || st.second;
    }
    for (int y : adj[static_cast<size_t>(st.first)])
      stack.push_back({y, st.second || is_enc(g.nodes[static_cast<size_t>(y)])});
  }
}

} // namespace

std::set<std::pair<RuleId, int>> brute_force(const FlowGraph &g, bool use_simple) {
  std::set<std::pair<RuleId, int>> out;
  const auto adj = adjacency(g);
  const int n = static_cast<int>(g.nodes.size());
  for (const auto &t : g.nodes) {
    switch (g.view) {
    case View::Output: {
      if (!t.sink)
        break;
      for (int s = 0; s < n; ++s) {
        if (!g.nodes[static_cast<size_t>(s)].origin)
          continue;
        bool reached = false;
        bool through_enc = false;
        if (use_simple) {
          std::vector<int> path;
          std::vector<char> on(static_cast<size_t>(n), 0);
          simple_paths(adj, s, t.id, path, on, [&](const std::vector<int> &p) {
            reached = true;
            for (int x : p)
              through_enc = through_enc || is_enc(g.nodes[static_cast<size_t>(x)]);
          });
        } else {
          walks(g, adj, s, t.id, reached, through_enc);
        }
        if (reached && !through_enc)
          out.insert({RuleId::BP_R1, t.id});
      }
      break;
    }
    case View::Input: {
      if (!t.sink)
        break;
      bool guarded = false;
      for (int gd : t.guarded_by)
        guarded = guarded || g.nodes[static_cast<size_t>(gd)].guard;
      if (guarded || (t.op == OpKind::Call && t.alloc_matched))
        break;
      bool reached = false;
      for (int s = 0; s < n && !reached; ++s) {
        if (!g.nodes[static_cast<size_t>(s)].origin)
          continue;
        std::vector<int> path;
        std::vector<char> on(static_cast<size_t>(n), 0);
        simple_paths(adj, s, t.id, path, on, [&](const std::vector<int> &) { reached = true; });
      }
      if (reached)
        out.insert({RuleId::BP_R2, t.id});
      break;
    }
    case View::Shared:
      if (t.isc != IscKind::None)
        out.insert({RuleId::BP_R3, t.id});
      break;
    }
  }
  return out;
}

std::set<std::pair<RuleId, int>> flagged(const std::vector<Finding> &findings) {
  std::set<std::pair<RuleId, int>> out;
  for (const auto &f : findings)
    out.insert({f.rule, f.node});
  return out;
}

FlowGraph random_graph(std::mt19937 &rng, View view, int nodes, bool acyclic) {
  std::bernoulli_distribution coin(0.5), often(0.35), rare(0.2);
  FlowGraph g;
  g.view = view;
  g.binding.entry_function = "entry";
  g.binding.index = 1;
  for (int i = 0; i < nodes; ++i) {
    FlowNode n;
    n.id = i;
    n.loc = {"r.c", i + 1, 1};
    n.op_loc = n.loc;
    n.op = coin(rng) ? OpKind::Call : OpKind::Assign;
    n.origin = often(rng);
    switch (view) {
    case View::Output:
      n.sink = often(rng);
      if (rare(rng))
        n.cls = CatalogClass::Enc;
      break;
    case View::Input:
      n.sink = often(rng);
      n.guard = rare(rng);
      n.alloc_matched = rare(rng);
      break;
    case View::Shared:
      n.isc = static_cast<IscKind>(std::uniform_int_distribution<int>(0, 3)(rng));
      break;
    }
    g.nodes.push_back(n);
  }
  if (view == View::Input)
    for (auto &n : g.nodes)
      for (const auto &m : g.nodes)
        if (m.id != n.id && m.guard && coin(rng))
          n.guarded_by.push_back(m.id);
  std::bernoulli_distribution edge(0.3);
  for (int a = 0; a < nodes; ++a)
    for (int b = 0; b < nodes; ++b)
      if (a != b && (!acyclic || a < b) && edge(rng))
        g.edges.push_back({a, b});
  for (auto &n : g.nodes)
    n.tags = derive_tags(g, n);
  return g;
}

} // namespace partcheck::testing
