#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace partcheck;
using namespace partcheck::testing;

namespace {

int ten_lines(const std::string &file) { return file == "ta.c" ? 10 : -1; }

Finding at(const std::string &file, int line, RuleId rule) {
  Finding f;
  f.location = {file, line, 1};
  f.rule = rule;
  return f;
}

GroundTruth truth_of(std::vector<Expected> e) {
  GroundTruth t;
  t.expected = std::move(e);
  t.expected_empty = t.expected.empty();
  return t;
}

} // namespace

TEST_CASE("category names") {
  for (auto c : {Category::Basic, Category::InProcedure, Category::Variadic,
                 Category::ControlFlow, Category::Combined})
    CHECK(parse_category(to_string(c)) == c);
  CHECK_FALSE(parse_category("basic"));
}

TEST_CASE("expect files") {
  auto t = parse_expect("c1",
                        "# category: Variadic\n# class: unencrypted-output\n\n"
                        "ta.c:7 BP-R1\nta.c:3 R2\n",
                        ten_lines);
  CHECK(t.name == "c1");
  CHECK(t.category == Category::Variadic);
  CHECK(t.issue_class == "unencrypted-output");
  CHECK_FALSE(t.known_fn);
  CHECK_FALSE(t.expected_empty);
  CHECK(t.expected == std::vector<Expected>{{"ta.c", 3, RuleId::BP_R2}, {"ta.c", 7, RuleId::BP_R1}});

  auto clean = parse_expect("c2", "# category: ControlFlow\nCLEAN\n", ten_lines);
  CHECK(clean.expected_empty);
  CHECK(clean.issue_class == "no-issue");

  auto miss = parse_expect("c3", "# known_fn: helper writes through a pointer\nta.c:2 BP-R1\n",
                           ten_lines);
  CHECK(miss.known_fn);
}

TEST_CASE("malformed expect files") {
  auto bad = [](const std::string &text) {
    CHECK_THROWS_AS(parse_expect("c", text, ten_lines), CorpusError);
  };
  bad("ta.c:999 BP-R1\n");
  bad("ta.c:0 BP-R1\n");
  bad("other.c:2 BP-R1\n");
  bad("ta.c:2 BP-R7\n");
  bad("ta.c:2x BP-R1\n");
  bad("ta.c BP-R1\n");
  bad("ta.c:2\n");
  bad("# category: Sideways\nCLEAN\n");
  bad("CLEAN\nta.c:2 BP-R1\n");
  bad("# category: Basic\n");
  try {
    parse_expect("case_x", "ta.c:999 BP-R1\n", ten_lines);
  } catch (const CorpusError &e) {
    CHECK(std::string(e.what()).find("case_x") != std::string::npos);
    CHECK(std::string(e.what()).find("999") != std::string::npos);
  }
}

TEST_CASE("metric arithmetic") {
  RuleMetrics none{4, 0, 0};
  CHECK_FALSE(none.precision());
  CHECK(none.recall() == 0.0);
  CHECK(none.f1() == 0.0);
  RuleMetrics empty{};
  CHECK(empty.recall() == 0.0);
  RuleMetrics some{10, 8, 6};
  CHECK(*some.precision() == doctest::Approx(0.75));
  CHECK(some.recall() == doctest::Approx(0.6));
  CHECK(some.f1() == doctest::Approx(2 * 0.75 * 0.6 / 1.35));
}

TEST_CASE("scoring matches on file, line and rule") {
  std::vector<GroundTruth> truth = {
      truth_of({{"ta.c", 3, RuleId::BP_R1}, {"ta.c", 5, RuleId::BP_R1}}),
      truth_of({{"ta.c", 4, RuleId::BP_R2}}),
      truth_of({}),
  };
  auto suppressed = at("ta.c", 5, RuleId::BP_R1);
  suppressed.suppressed_by = "F1";
  std::vector<std::vector<Finding>> results = {
      // One hit, one wrong line, one suppressed hit that does not count.
      {at("ta.c", 3, RuleId::BP_R1), at("ta.c", 4, RuleId::BP_R1), suppressed},
      // Right line, wrong rule; then the hit, reported twice.
      {at("ta.c", 4, RuleId::BP_R3), at("ta.c", 4, RuleId::BP_R2), at("ta.c", 4, RuleId::BP_R2)},
      {at("ca.c", 1, RuleId::BP_R3)},
  };
  auto m = score(results, truth);
  CHECK(m.rules[0].ni == 2);
  CHECK(m.rules[0].n == 2);
  CHECK(m.rules[0].tp == 1);
  CHECK(m.rules[1].ni == 1);
  CHECK(m.rules[1].n == 2);
  CHECK(m.rules[1].tp == 1);
  CHECK(m.rules[2].ni == 0);
  CHECK(m.rules[2].n == 2);
  CHECK(m.rules[2].tp == 0);
  CHECK(m.total.ni == 3);
  CHECK(m.total.n == 6);
  CHECK(m.total.tp == 2);
  // Missing results count as nothing reported.
  auto partial = score({}, truth);
  CHECK(partial.total.ni == 3);
  CHECK(partial.total.n == 0);
}

TEST_CASE("tables and CSV") {
  Metrics m;
  m.rules[0] = {35, 34, 33};
  m.total = {35, 34, 33};
  auto table = metrics_table(m, false);
  CHECK(table.find("mode: baseline") != std::string::npos);
  CHECK(table.find("not exact oracles") != std::string::npos);
  CHECK(table.find("N/A") != std::string::npos);
  CHECK(metrics_table(m, true).find("mode: refined") != std::string::npos);
  auto csv = metrics_csv(m);
  CHECK(csv.rfind("rule,NI,N,TP,precision,recall,F1\n", 0) == 0);
  CHECK(csv.find("BP-R1,35,34,33,0.9706,0.9429,") != std::string::npos);
  CHECK(csv.find("BP-R2,0,0,0,NA,0.0000,0.0000") != std::string::npos);
  CHECK(timing_csv({{"a", 12, 1.5, 0.25}}) == "case,loc,flow_ms,rules_ms\na,12,1.500,0.250\n");
}

TEST_CASE("loading the corpus") {
  auto cases = load_corpus(corpus_dir());
  CHECK(cases.size() == 110);
  CHECK(std::is_sorted(cases.begin(), cases.end(),
                       [](const BenchCase &a, const BenchCase &b) { return a.dir < b.dir; }));
  int clean = 0;
  int known = 0;
  for (const auto &c : cases) {
    CHECK_FALSE(c.files.empty());
    CHECK(std::find(c.files.begin(), c.files.end(), "ta.c") != c.files.end());
    clean += c.truth.expected_empty;
    known += c.truth.known_fn;
  }
  CHECK(clean == 20);
  CHECK(known == 9);
  CHECK_THROWS_AS(load_corpus(corpus_dir() + "/does-not-exist"), CorpusError);
}

TEST_CASE("corpus errors name the case") {
  namespace fs = std::filesystem;
  fs::path root = fs::path(PARTCHECK_BINARY_DIR) / "bench_unit";
  fs::remove_all(root);
  fs::create_directories(root / "broken");
  std::ofstream(root / "broken" / "ta.c") << "int x;\n";
  std::ofstream(root / "broken" / "expect.txt") << "ta.c:999 BP-R1\n";
  try {
    load_corpus(root.string());
    FAIL("expected CorpusError");
  } catch (const CorpusError &e) {
    CHECK(std::string(e.what()).find("broken") != std::string::npos);
  }
  fs::remove(root / "broken" / "expect.txt");
  CHECK_THROWS_AS(load_corpus(root.string()), CorpusError);
  fs::remove_all(root / "broken");
  auto run = run_bench(root.string(), {});
  CHECK(run.cases.empty());
  CHECK(run.metrics.total.ni == 0);
  CHECK(run.metrics.total.n == 0);
  fs::remove_all(root);
}

TEST_CASE("bench metrics agree with a direct count") {
  // Count hits from the per-case line lists, independent of score().
  for (bool refined : {false, true}) {
    auto run = run_bench(corpus_dir(), {refined, false, false}, 2);
    int ni = 0, n = 0, tp = 0;
    for (const auto &c : run.cases) {
      auto want = expected_lines(c.dir);
      auto got = active_lines(scan(c.dir, {refined, false, false}));
      ni += static_cast<int>(want.size());
      n += static_cast<int>(got.size());
      for (const auto &g : got)
        tp += std::count(want.begin(), want.end(), g) > 0;
    }
    CHECK(run.metrics.total.ni == ni);
    CHECK(run.metrics.total.n == n);
    CHECK(run.metrics.total.tp == tp);
    CHECK(run.timing.size() == run.cases.size());
  }
}
