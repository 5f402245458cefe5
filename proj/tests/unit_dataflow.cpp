#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace partcheck;
using namespace partcheck::testing;

namespace {

const FlowGraph &graph(const Program &p, int index, View view) {
  for (const auto &g : p.graphs)
    if (g.binding.index == index && g.view == view)
      return g;
  throw std::runtime_error("no such graph");
}

const FlowNode &node_at(const FlowGraph &g, int line) {
  for (const auto &n : g.nodes)
    if (n.op_loc.line == line && n.op != OpKind::MemberRead)
      return n;
  throw std::runtime_error("no node on line " + std::to_string(line));
}

} // namespace

TEST_CASE("views per role") {
  CHECK(views_for(ParamRole::Output) == std::vector<View>{View::Output});
  CHECK(views_for(ParamRole::Input) == std::vector<View>{View::Input});
  CHECK(views_for(ParamRole::InOut) == std::vector<View>{View::Output, View::Input});
  CHECK(views_for(ParamRole::SharedMemory) == std::vector<View>{View::Shared});
  CHECK(views_for(ParamRole::Unknown).empty());
}

TEST_CASE("an in/out parameter yields both graphs") {
  auto ta = parse_text("TEE_Result TA_InvokeCommandEntryPoint(void *s, uint32_t c, uint32_t t,\n"
                       "                                      TEE_Param params[4])\n{\n"
                       "    char tmp[16];\n"
                       "    TEE_MemMove(tmp, params[0].memref.buffer, params[0].memref.size);\n"
                       "    TEE_MemMove(params[0].memref.buffer, key, 16);\n"
                       "    return TEE_SUCCESS;\n}\n",
                       "ta.c");
  auto ca = parse_text("int main(void)\n{\n"
                       "    op.paramTypes = TEEC_PARAM_TYPES(TEEC_MEMREF_TEMP_INOUT, TEEC_NONE,\n"
                       "                                     TEEC_NONE, TEEC_NONE);\n"
                       "    TEEC_InvokeCommand(&sess, 1, &op, &origin);\n    return 0;\n}\n",
                       "ca.c");
  std::vector<const Ast *> asts{&ca, &ta};
  auto cls = classify_params(asts, {});
  auto roots = find_roots(asts);
  REQUIRE(roots.size() == 1);
  auto graphs = build_root_flows(roots[0], cls.bindings, asts, default_catalog());
  std::vector<View> views;
  for (const auto &g : graphs)
    if (g.binding.index == 0)
      views.push_back(g.view);
  CHECK(views == std::vector<View>{View::Output, View::Input});
  for (const auto &g : graphs) {
    std::vector<std::pair<RuleId, int>> got;
    for (const auto &f : check_graph(g, default_catalog(), {}))
      got.push_back({f.rule, f.location.line});
    if (g.view == View::Output)
      CHECK(got == std::vector<std::pair<RuleId, int>>{{RuleId::BP_R1, 6}});
    else // the fixed-size write into the caller's buffer is unchecked too
      CHECK(got == std::vector<std::pair<RuleId, int>>{{RuleId::BP_R2, 5}, {RuleId::BP_R2, 6}});
  }
}

TEST_CASE("reachability") {
  FlowGraph g;
  for (int i = 0; i < 4; ++i) {
    FlowNode n;
    n.id = i;
    g.nodes.push_back(n);
  }
  g.edges = {{0, 1}, {1, 2}, {2, 1}};
  CHECK(reaches(g, 3, 3));
  CHECK(reaches(g, 0, 2));
  CHECK(reaches(g, 2, 1));
  CHECK_FALSE(reaches(g, 2, 0));
  CHECK_FALSE(reaches(g, 0, 3));
  CHECK_THROWS_AS(reaches(g, 0, 4), UnknownNode);
  CHECK_THROWS_AS(reaches(g, -1, 0), UnknownNode);
}

TEST_CASE("unknown entry functions are rejected") {
  auto p = load_program(fixture("unchecked_copy"));
  std::vector<const Ast *> asts;
  for (const auto &a : p.asts)
    asts.push_back(&a);
  ParamBinding b;
  b.entry_function = "nowhere";
  b.index = 1;
  b.role = ParamRole::Input;
  b.kind = ParamKind::TempMemref;
  CHECK_THROWS_AS(build_flow(b, View::Input, asts, default_catalog()), UnresolvedEntry);
  b.entry_function = kSnippetFunction;
  b.file = "ta.c";
  auto g = build_flow(b, View::Input, asts, default_catalog());
  CHECK(g.nodes.size() == 1);
}

TEST_CASE("graph invariants on every case") {
  size_t graphs = 0;
  for (const auto &dir : all_case_dirs()) {
    auto p = load_program(dir);
    for (const auto &g : p.graphs) {
      ++graphs;
      INFO(dir << " param " << g.binding.index << " " << to_string(g.view));
      for (size_t i = 0; i < g.nodes.size(); ++i) {
        const auto &n = g.nodes[i];
        CHECK(n.id == static_cast<int>(i));
        // Stored tags are exactly what the facts give.
        CHECK(n.tags == derive_tags(g, n));
        if (i > 0) {
          const auto &m = g.nodes[i - 1];
          CHECK(std::tie(m.op_loc.file, m.op_loc.line, m.op_loc.column) <=
                std::tie(n.op_loc.file, n.op_loc.line, n.op_loc.column));
        }
        for (int gd : n.guarded_by) {
          CHECK(gd >= 0);
          CHECK(gd < static_cast<int>(g.nodes.size()));
          CHECK(g.nodes[static_cast<size_t>(gd)].guard);
        }
      }
      CHECK(std::is_sorted(g.edges.begin(), g.edges.end()));
      CHECK(std::adjacent_find(g.edges.begin(), g.edges.end()) == g.edges.end());
      for (const auto &e : g.edges) {
        CHECK(e.from >= 0);
        CHECK(e.to < static_cast<int>(g.nodes.size()));
      }
      CHECK(views_for(g.binding.role).size() > 0);
    }
  }
  CHECK(graphs > 120);
}

TEST_CASE("unchecked_copy: one copy sink reading the input") {
  auto p = load_program(fixture("unchecked_copy"));
  const auto &g = graph(p, 1, View::Input);
  REQUIRE(g.nodes.size() == 1);
  const auto &n = g.nodes[0];
  CHECK(n.sink);
  CHECK(n.origin);
  CHECK(n.cls == CatalogClass::Copy);
  CHECK(n.guarded_by.empty());
  CHECK(n.loc == SourceLocation{"ta.c", 3, 1});
  CHECK(dump_flow(g) ==
        "graph __snippet__ param 1 input view input\n"
        "  n0 Source,Sink,CS ta.c:3:1 call:copy TEE_MemMove | "
        "TEE_MemMove(test, params[1].memref.buffer, params[1].memref.size)\n");
}

TEST_CASE("shared_direct: shared-memory node kinds") {
  auto p = load_program(fixture("shared_direct"));
  const auto &g = graph(p, 2, View::Shared);
  CHECK(node_at(g, 2).isc == IscKind::ShallowCopy);
  CHECK(node_at(g, 3).isc == IscKind::SizeRead);
  CHECK(node_at(g, 5).isc == IscKind::DirectUse);
  CHECK(reaches(g, node_at(g, 2).id, node_at(g, 5).id));
}

TEST_CASE("guarded_copy: the size check guards the copy") {
  auto p = load_program(fixture("guarded_copy"));
  const auto &g = graph(p, 2, View::Input);
  const auto &copy = node_at(g, 2);
  const auto &cond = node_at(g, 1);
  CHECK(copy.sink);
  CHECK(cond.guard);
  CHECK(std::find(copy.guarded_by.begin(), copy.guarded_by.end(), cond.id) !=
        copy.guarded_by.end());
  CHECK((cond.tags & tag::SC) != 0);
}

TEST_CASE("matched_alloc: the destination size matches the copy") {
  auto p = load_program(fixture("matched_alloc"));
  const auto &g = graph(p, 1, View::Input);
  CHECK(node_at(g, 2).alloc_matched);
  CHECK(node_at(g, 2).sink);
}

TEST_CASE("filter facts on the false-positive fixtures") {
  auto a = load_program(fixture("length_writeback"));
  CHECK(node_at(graph(a, 0, View::Output), 3).length_value);
  CHECK(node_at(graph(a, 1, View::Output), 5).param_value);
  auto b = load_program(fixture("own_size_index"));
  bool own = false;
  for (const auto &n : graph(b, 0, View::Input).nodes)
    own = own || (n.sink && n.own_size_index);
  CHECK(own);
}

TEST_CASE("loop_bound: loop write fact") {
  auto p = load_program(fixture("loop_bound"));
  const auto &g = graph(p, 2, View::Input);
  const auto &w = node_at(g, 4);
  REQUIRE(w.loop_cond >= 0);
  CHECK(g.nodes[static_cast<size_t>(w.loop_cond)].op == OpKind::CondExpr);
  CHECK(g.nodes[static_cast<size_t>(w.loop_cond)].op_loc.line == 3);
  auto guarded = load_program(fixture("loop_guarded"));
  for (const auto &n : graph(guarded, 2, View::Input).nodes)
    if (n.loop_cond >= 0)
      CHECK(n.guarded_by.size() > 1);
}

TEST_CASE("pointer_helper: deep pointers report at the call site") {
  auto base = load_program(fixture("pointer_helper"));
  auto deep = load_program(fixture("pointer_helper"), FlowOptions{true});
  auto sinks = [](const Program &p) {
    std::vector<SourceLocation> out;
    for (const auto &g : p.graphs)
      if (g.view == View::Output)
        for (const auto &n : g.nodes)
          if (n.sink)
            out.push_back(n.loc);
    return out;
  };
  CHECK(sinks(base).empty());
  auto d = sinks(deep);
  REQUIRE(d.size() == 1);
  CHECK(d[0].line == 15);
}

TEST_CASE("variadic arguments of a formatter") {
  auto p = load_program(fixture("variadic_leak"));
  const auto &n = graph(p, 0, View::Output).nodes.at(0);
  auto v = variadic_expand(n, default_catalog());
  REQUIRE(v.size() == 1);
  CHECK(v[0].first == 3);
  CHECK(v[0].second == "delta_refcount");
  FlowNode other;
  other.symbol = "strlen";
  other.args = {"x"};
  CHECK(variadic_expand(other, default_catalog()).empty());
}

TEST_CASE("encryption sanitizes the output") {
  for (const char *c : {"/clean_15_controlflow", "/clean_17_controlflow"}) {
  auto p = load_program(corpus_dir() + c);
  for (const auto &g : p.graphs) {
    if (g.view != View::Output)
      continue;
    bool enc = false;
    for (const auto &n : g.nodes)
      enc = enc || (n.tags & tag::SC);
    CHECK(enc);
    CHECK(check_graph(g, default_catalog(), {}).empty());
  }
  }
}
