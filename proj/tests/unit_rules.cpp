#include "support.hpp"

#include <doctest.h>

#include <fstream>

using namespace partcheck;
using namespace partcheck::testing;

using Lines = std::vector<std::string>;

TEST_CASE("rule names") {
  for (auto r : {RuleId::BP_R1, RuleId::BP_R2, RuleId::BP_R3}) {
    CHECK(parse_rule(to_string(r)) == r);
    CHECK(explain(r).rfind(to_string(r), 0) == 0);
  }
  CHECK(parse_rule("R2") == RuleId::BP_R2);
  CHECK(parse_rule("BP_R3") == RuleId::BP_R3);
  CHECK_FALSE(parse_rule("R4"));
}

TEST_CASE("exemplar fixtures, baseline") {
  CHECK(active_lines(scan(fixture("variadic_leak"))) == Lines{"ta.c:2 BP-R1"});
  CHECK(active_lines(scan(fixture("unchecked_copy"))) == Lines{"ta.c:3 BP-R2"});
  CHECK(active_lines(scan(fixture("shared_direct"))) ==
        Lines{"ta.c:2 BP-R3", "ta.c:3 BP-R3", "ta.c:5 BP-R3"});
  CHECK(active_lines(scan(fixture("split_entry"))) == Lines{"ta.c:3 BP-R1"});
  CHECK(active_lines(scan(fixture("guarded_copy"))).empty());
  CHECK(active_lines(scan(fixture("matched_alloc"))).empty());
  CHECK(active_lines(scan(fixture("clean"))).empty());
}

TEST_CASE("false-positive patterns: baseline reports, refined suppresses") {
  const RuleConfig refined{true, false, false};
  CHECK(active_lines(scan(fixture("length_writeback"))) == Lines{"ta.c:3 BP-R1", "ta.c:5 BP-R1"});
  CHECK(active_lines(scan(fixture("length_writeback"), refined)).empty());
  CHECK(suppressed_lines(scan(fixture("length_writeback"), refined)) ==
        Lines{"ta.c:3 BP-R1 F1", "ta.c:5 BP-R1 F1"});
  CHECK(active_lines(scan(fixture("own_size_index"))) == Lines{"ta.c:3 BP-R2"});
  CHECK(suppressed_lines(scan(fixture("own_size_index"), refined)) == Lines{"ta.c:3 BP-R2 F2"});
  CHECK(active_lines(scan(fixture("shared_size_read"))) == Lines{"ta.c:2 BP-R3", "ta.c:4 BP-R3"});
  CHECK(active_lines(scan(fixture("shared_size_read"), refined)) == Lines{"ta.c:4 BP-R3"});
  CHECK(suppressed_lines(scan(fixture("shared_size_read"), refined)) == Lines{"ta.c:2 BP-R3 F3"});
}

TEST_CASE("refinement keeps the exemplar true positives") {
  const RuleConfig refined{true, false, false};
  CHECK(active_lines(scan(fixture("variadic_leak"), refined)) == Lines{"ta.c:2 BP-R1"});
  CHECK(active_lines(scan(fixture("unchecked_copy"), refined)) == Lines{"ta.c:3 BP-R2"});
  CHECK(active_lines(scan(fixture("shared_direct"), refined)) == Lines{"ta.c:2 BP-R3", "ta.c:5 BP-R3"});
}

TEST_CASE("known misses and their switches") {
  CHECK(active_lines(scan(fixture("pointer_helper"))).empty());
  CHECK(active_lines(scan(fixture("loop_bound"))).empty());
  CHECK(active_lines(scan(fixture("pointer_helper"), {false, false, true})) == Lines{"ta.c:15 BP-R1"});
  CHECK(active_lines(scan(fixture("loop_bound"), {false, true, false})) == Lines{"ta.c:4 BP-R2"});
  CHECK(active_lines(scan(fixture("loop_bound"), {false, false, true})).empty());
  CHECK(active_lines(scan(fixture("pointer_helper"), {false, true, false})).empty());
  CHECK(active_lines(scan(fixture("loop_guarded"), {false, true, false})).empty());
  CHECK(active_lines(scan(fixture("loop_fixed"), {false, true, false})) ==
        Lines{"ta.c:3 BP-R2"});
}

TEST_CASE("the loop extension adds nothing for constant or guarded loops") {
  const RuleConfig ext{false, true, false};
  for (const char *name : {"loop_fixed", "loop_guarded"}) {
    auto p = load_program(fixture(name));
    for (const auto &g : p.graphs)
      CHECK(extended_r2(g, ext).empty());
  }
  auto p = load_program(fixture("loop_bound"));
  for (const auto &g : p.graphs)
    CHECK(extended_r2(g, RuleConfig{}).empty());
}

TEST_CASE("corpus cases against their ground truth") {
  for (const auto &dir : all_case_dirs()) {
    if (dir.find("/corpus/") == std::string::npos)
      continue;
    auto truth = expected_lines(dir);
    std::ifstream in(dir + "/expect.txt");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    bool known_fn = text.find("# known_fn") != std::string::npos;
    INFO(dir);
    auto base = active_lines(scan(dir));
    auto refined = active_lines(scan(dir, {true, false, false}));
    if (known_fn) {
      CHECK(base.empty());
      auto all = active_lines(scan(dir, {true, true, true}));
      if (dir.find("r3_") == std::string::npos)
        CHECK(all == truth);
    } else if (truth.empty()) {
      CHECK(refined.empty());
    } else {
      CHECK(base == truth);
      CHECK(refined == truth);
    }
  }
}

TEST_CASE("refinement only marks, never drops") {
  const RuleConfig refined{true, false, false};
  for (const auto &dir : all_case_dirs()) {
    auto p = load_program(dir);
    for (const auto &g : p.graphs) {
      auto found = detect(g, default_catalog(), {});
      CHECK(apply_filters(found, g, {}) == found);
      auto marked = apply_filters(found, g, refined);
      REQUIRE(marked.size() == found.size());
      for (size_t i = 0; i < found.size(); ++i) {
        auto plain = marked[i];
        plain.suppressed_by.reset();
        CHECK(plain == found[i]);
      }
      // Idempotent.
      CHECK(apply_filters(marked, g, refined) == marked);
    }
  }
}

TEST_CASE("role gating") {
  for (const auto &dir : all_case_dirs()) {
    auto p = load_program(dir);
    for (const auto &g : p.graphs) {
      for (const auto &f : check_graph(g, default_catalog(), {true, true, false})) {
        switch (g.view) {
        case View::Output:
          CHECK(f.rule == RuleId::BP_R1);
          break;
        case View::Input:
          CHECK(f.rule == RuleId::BP_R2);
          break;
        case View::Shared:
          CHECK(f.rule == RuleId::BP_R3);
          break;
        }
        CHECK((g.view == View::Shared) == (g.binding.role == ParamRole::SharedMemory));
      }
    }
  }
}

TEST_CASE("findings are unique per rule, location and parameter") {
  for (const auto &dir : all_case_dirs()) {
    auto report = scan(dir, {false, true, true});
    std::set<std::tuple<RuleId, SourceLocation, int, std::string>> seen;
    for (const auto &f : report.findings)
      CHECK(seen.insert({f.rule, f.location, f.param.index, f.entry_function}).second);
    CHECK(std::is_sorted(report.findings.begin(), report.findings.end(), finding_less));
  }
}

TEST_CASE("traces end at the flagged statement") {
  for (const auto &dir : all_case_dirs())
    for (const auto &f : scan(dir).findings) {
      REQUIRE_FALSE(f.trace.empty());
      CHECK(f.trace.back() == f.location);
    }
}

// ---- detection against path enumeration --------------------------------------

TEST_CASE("detection equals path enumeration on random small graphs") {
  std::mt19937 rng(20240501);
  int compared = 0;
  int flagged_total = 0;
  for (View view : {View::Output, View::Input, View::Shared}) {
    for (int round = 0; round < 1500; ++round) {
      int n = 1 + static_cast<int>(rng() % 8);
      bool acyclic = round % 2 == 0;
      FlowGraph g = random_graph(rng, view, n, acyclic);
      auto got = flagged(detect(g, default_catalog(), {}));
      auto want = brute_force(g, acyclic);
      INFO(to_string(view) << " round " << round << " nodes " << n);
      CHECK(got == want);
      if (acyclic)
        CHECK(brute_force(g, false) == want);
      ++compared;
      flagged_total += static_cast<int>(want.size());
    }
  }
  CHECK(compared == 4500);
  CHECK(flagged_total > 1000);
}

TEST_CASE("detection equals path enumeration on every small case graph") {
  int compared = 0;
  for (const auto &dir : all_case_dirs()) {
    auto p = load_program(dir);
    for (const auto &g : p.graphs) {
      if (g.nodes.size() > 8)
        continue;
      INFO(dir << " param " << g.binding.index << " " << to_string(g.view));
      CHECK(flagged(detect(g, default_catalog(), {})) == brute_force(g, false));
      ++compared;
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("an encryption node on a side branch does not sanitize") {
  // 0 -> 1 (sink), 0 -> 2 (enc): the data reaches the sink unencrypted.
  FlowGraph g;
  g.view = View::Output;
  for (int i = 0; i < 3; ++i) {
    FlowNode n;
    n.id = i;
    n.loc = {"x.c", i + 1, 1};
    g.nodes.push_back(n);
  }
  g.nodes[0].origin = true;
  g.nodes[1].sink = true;
  g.nodes[2].cls = CatalogClass::Enc;
  g.edges = {{0, 1}, {0, 2}};
  for (auto &n : g.nodes)
    n.tags = derive_tags(g, n);
  CHECK(detect(g, default_catalog(), {}).size() == 1);
  // Routing the only path through the encryption node clears it.
  g.edges = {{0, 2}, {2, 1}};
  CHECK(detect(g, default_catalog(), {}).empty());
}
