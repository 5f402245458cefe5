// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <tuple>

using namespace partcheck;
using namespace partcheck::testing;

namespace fs = std::filesystem;

namespace {

using Lines = std::vector<std::string>;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string &what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string join(const Lines &v) {
  std::string out;
  for (const auto &s : v)
    out += (out.empty() ? "" : ", ") + s;
  return "{" + out + "}";
}

Lines minus(const Lines &a, const Lines &b) {
  Lines out;
  for (const auto &s : a)
    if (std::find(b.begin(), b.end(), s) == b.end())
      out.push_back(s);
  return out;
}

// ---- 1 -----------------------------------------------------------------------

void exemplars(Outcome &o) {
  const std::pair<const char *, const char *> cases[] = {
      {"variadic_leak", "BP-R1"}, {"unchecked_copy", "BP-R2"}, {"shared_direct", "BP-R3"}, {"guarded_copy", ""}, {"matched_alloc", ""}};
  double slowest = 0;
  for (auto [name, rule] : cases) {
    auto t0 = Clock::now();
    auto report = scan(fixture(name));
    double s = seconds_since(t0);
    slowest = std::max(slowest, s);
    auto got = active_lines(report);
    auto want = expected_lines(fixture(name));
    o.require(got == want, std::string(name) + " gave " + join(got) + ", want " + join(want));
    o.require(report.active_count() == want.size(), std::string(name) + " count");
    for (const auto &f : report.findings)
      o.require(to_string(f.rule) == std::string(rule), std::string(name) + " rule");
    o.require(s < 1.0, std::string(name) + " took " + std::to_string(s) + " s");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "5 fixtures exact, slowest %.3f s", slowest);
  o.detail << buf;
}

// ---- 2 -----------------------------------------------------------------------

void fp_fn_regression(Outcome &o) {
  const RuleConfig base{};
  const RuleConfig refined{true, false, false};
  size_t fps = 0;
  for (const char *name : {"length_writeback", "own_size_index", "shared_size_read"}) {
    auto b = active_lines(scan(fixture(name), base));
    auto want = expected_lines(fixture(name));
    auto fp = minus(b, want);
    fps += fp.size();
    o.require(!fp.empty(), std::string(name) + " baseline has no false positive");
    auto r = scan(fixture(name), refined);
    Lines sup;
    for (const auto &s : suppressed_lines(r))
      sup.push_back(s.substr(0, s.rfind(' ')));
    o.require(sup == fp, std::string(name) + " suppressed " + join(sup) + ", want " + join(fp));
    o.require(active_lines(r) == want, std::string(name) + " refined keeps " + join(want));
  }
  const std::pair<const char *, Lines> tps[] = {
      {"variadic_leak", {"ta.c:2 BP-R1"}},
      {"unchecked_copy", {"ta.c:3 BP-R2"}},
      {"shared_direct", {"ta.c:2 BP-R3", "ta.c:5 BP-R3"}},
  };
  for (const auto &[name, lines] : tps) {
    auto r = active_lines(scan(fixture(name), refined));
    o.require(minus(lines, r).empty(), std::string(name) + " refined lost a true positive");
  }
  o.require(active_lines(scan(fixture("pointer_helper"), base)).empty(), "pointer_helper baseline flagged");
  o.require(active_lines(scan(fixture("loop_bound"), base)).empty(), "loop_bound baseline flagged");
  o.require(active_lines(scan(fixture("loop_bound"), {false, true, false})) ==
                expected_lines(fixture("loop_bound")),
            "extended R2 misses loop_bound");
  o.require(active_lines(scan(fixture("pointer_helper"), {false, true, false})).empty(),
            "extended R2 alone catches pointer_helper");
  o.require(active_lines(scan(fixture("pointer_helper"), {false, false, true})) ==
                expected_lines(fixture("pointer_helper")),
            "deep pointers miss pointer_helper");
  o.detail << fps << " baseline false positives suppressed, exemplar true positives kept, "
                     "loop_bound via extended R2, pointer_helper via deep pointers";
}

// ---- 3 -----------------------------------------------------------------------

void corpus_metrics(Outcome &o) {
  auto base = run_bench(corpus_dir(), {});
  auto refined = run_bench(corpus_dir(), {true, false, false});
  std::cout << metrics_table(base.metrics, false) << metrics_table(refined.metrics, true);
  const double target[3] = {94.29, 79.31, 96.15};
  o.require(base.cases.size() == 110, "corpus has " + std::to_string(base.cases.size()) +
                                          " cases");
  o.require(base.metrics.total.f1() >= 0.90, "total F1 " + std::to_string(base.metrics.total.f1()));
  for (int i = 0; i < 3; ++i) {
    double r = 100 * base.metrics.rules[i].recall();
    o.require(std::fabs(r - target[i]) <= 5.0,
              "rule " + std::to_string(i + 1) + " recall " + std::to_string(r));
    auto pb = base.metrics.rules[i].precision();
    auto pr = refined.metrics.rules[i].precision();
    o.require(pb && pr && *pr >= *pb, "refined precision below baseline for rule " +
                                          std::to_string(i + 1));
  }
  o.require(metrics_table(base.metrics, false).find("not exact oracles") != std::string::npos,
            "table lacks the oracle note");
  char buf[160];
  std::snprintf(buf, sizeof buf, "F1 %.3f, recall %.2f / %.2f / %.2f (targets, not oracles)",
                base.metrics.total.f1(), 100 * base.metrics.rules[0].recall(),
                100 * base.metrics.rules[1].recall(), 100 * base.metrics.rules[2].recall());
  o.detail << buf;
}

// ---- 4 -----------------------------------------------------------------------

void oracle_equivalence(Outcome &o) {
  int compared = 0;
  int discrepancies = 0;
  for (const auto &dir : all_case_dirs()) {
    for (bool deep : {false, true}) {
      auto p = load_program(dir, FlowOptions{deep});
      for (const auto &g : p.graphs) {
        if (g.nodes.size() > 8)
          continue;
        ++compared;
        if (flagged(detect(g, default_catalog(), {})) != brute_force(g, false)) {
          ++discrepancies;
          o.require(false, dir + " param " + std::to_string(g.binding.index));
        }
      }
    }
  }
  std::mt19937 rng(7);
  int random_compared = 0;
  for (View view : {View::Output, View::Input, View::Shared})
    for (int i = 0; i < 2000; ++i) {
      bool acyclic = i % 2 == 0;
      auto g = random_graph(rng, view, 1 + static_cast<int>(rng() % 8), acyclic);
      ++random_compared;
      auto got = flagged(detect(g, default_catalog(), {}));
      if (got != brute_force(g, acyclic) || got != brute_force(g, false)) {
        ++discrepancies;
        o.require(false, "random graph " + std::to_string(i));
      }
    }
  o.require(compared > 0, "no small case graphs");
  o.detail << compared << " case graphs and " << random_compared << " random graphs, "
           << discrepancies << " discrepancies";
}

// ---- 5 -----------------------------------------------------------------------

void determinism(Outcome &o) {
  std::vector<std::string> dirs;
  for (const auto &c : load_corpus(corpus_dir()))
    dirs.push_back(c.dir);
  const int n = std::max(4, resolve_jobs(0));
  size_t bytes = 0;
  for (const RuleConfig &rules : {RuleConfig{}, RuleConfig{true, true, true}}) {
    ScanOptions opts;
    opts.paths = dirs;
    opts.rules = rules;
    opts.jobs = 1;
    auto serial = emit(run_scan(opts).report, Format::Json);
    opts.jobs = n;
    auto parallel = emit(run_scan(opts).report, Format::Json);
    o.require(serial == parallel, "JSON differs between 1 and " + std::to_string(n) + " jobs");
    bytes += serial.size();
  }
  o.detail << dirs.size() << " cases, jobs 1 vs " << n << ", " << bytes
           << " JSON bytes identical";
}

// ---- 6 -----------------------------------------------------------------------

struct LargeCase {
  size_t loc = 0;
  // Line range in ta.c and the rule each deliberately broken handler breaks.
  std::vector<std::tuple<int, int, RuleId>> bugs;
};

int line_count(const std::string &s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

// A dispatching TA with `handlers` command handlers and a client calling each.
// Every tenth handler leaks a global to the output, another skips the size check.
LargeCase write_large_case(const fs::path &dir, int handlers) {
  LargeCase out;
  fs::create_directories(dir);
  std::ostringstream ta, ca;
  ta << "#include <tee_internal_api.h>\n#include <string.h>\n#include <stdio.h>\n\n"
        "static char g_secret[64];\nstatic uint32_t g_counter;\n\n";
  for (int h = 0; h < handlers; ++h)
    ta << "#define CMD_OP_" << h << " " << h << "\n";
  ta << "\n";
  for (int k = 0; k < 8; ++k)
    ta << "static void mix_" << k << "(char *buf, uint32_t len)\n{\n"
       << "    uint32_t i;\n\n"
       << "    for (i = 0; i < len; i++)\n"
       << "        buf[i] = (char)(buf[i] ^ (i * " << (k + 3) << "));\n"
       << "    g_counter += len;\n}\n\n";
  for (int h = 0; h < handlers; ++h) {
    const bool leaky = h % 10 == 3;
    const bool unchecked = h % 10 == 7;
    const int first = line_count(ta.str()) + 1;
    ta << "static TEE_Result cmd_op_" << h << "(uint32_t param_types, TEE_Param params[4])\n{\n"
       << "    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_MEMREF_INPUT,\n"
       << "                                   TEE_PARAM_TYPE_MEMREF_OUTPUT,\n"
       << "                                   TEE_PARAM_TYPE_VALUE_INPUT,\n"
       << "                                   TEE_PARAM_TYPE_NONE);\n"
       << "    char buf[64];\n    char out[64];\n    uint32_t n;\n    uint32_t i;\n\n"
       << "    if (param_types != exp)\n        return TEE_ERROR_BAD_PARAMETERS;\n";
    if (!unchecked)
      ta << "    if (params[0].memref.size > sizeof(buf))\n"
         << "        return TEE_ERROR_SHORT_BUFFER;\n";
    ta << "    TEE_MemMove(buf, params[0].memref.buffer, params[0].memref.size);\n"
       << "    n = params[2].value.a;\n"
       << "    if (n > sizeof(buf))\n        n = sizeof(buf);\n"
       << "    for (i = 0; i < n; i++) {\n"
       << "        if (buf[i] == 0)\n            break;\n"
       << "        buf[i] = (char)(buf[i] + " << (h % 13) << ");\n    }\n"
       << "    mix_" << (h % 8) << "(buf, n);\n"
       << "    mix_" << ((h + 3) % 8) << "(buf, sizeof(buf));\n";
    if (leaky)
      ta << "    snprintf(out, sizeof(out), \"%s:%u\", g_secret, n);\n";
    else
      ta << "    TEE_CipherUpdate(g_op, buf, n, out, &n);\n";
    ta << "    if (params[1].memref.size < sizeof(out))\n"
       << "        return TEE_ERROR_SHORT_BUFFER;\n"
       << "    TEE_MemMove(params[1].memref.buffer, out, sizeof(out));\n"
       << "    params[1].memref.size = sizeof(out);\n"
       << "    g_counter++;\n    return TEE_SUCCESS;\n}\n";
    if (leaky)
      out.bugs.emplace_back(first, line_count(ta.str()), RuleId::BP_R1);
    if (unchecked)
      out.bugs.emplace_back(first, line_count(ta.str()), RuleId::BP_R2);
    ta << "\n";
  }
  ta << "TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,\n"
     << "                                      uint32_t param_types, TEE_Param params[4])\n{\n"
     << "    (void)sess_ctx;\n    switch (cmd_id) {\n";
  for (int h = 0; h < handlers; ++h)
    ta << "    case CMD_OP_" << h << ":\n        return cmd_op_" << h
       << "(param_types, params);\n";
  ta << "    default:\n        return TEE_ERROR_NOT_SUPPORTED;\n    }\n}\n";

  ca << "#include <tee_client_api.h>\n#include <string.h>\n\n";
  for (int h = 0; h < handlers; ++h)
    ca << "#define CMD_OP_" << h << " " << h << "\n";
  ca << "\n";
  for (int h = 0; h < handlers; ++h)
    ca << "static int call_op_" << h << "(TEEC_Session *sess, char *in, char *out, uint32_t v)\n{\n"
       << "    TEEC_Operation op;\n    uint32_t origin;\n    TEEC_Result res;\n\n"
       << "    memset(&op, 0, sizeof(op));\n"
       << "    op.paramTypes = TEEC_PARAM_TYPES(TEEC_MEMREF_TEMP_INPUT, TEEC_MEMREF_TEMP_OUTPUT,\n"
       << "                                     TEEC_VALUE_INPUT, TEEC_NONE);\n"
       << "    op.params[0].tmpref.buffer = in;\n    op.params[0].tmpref.size = 64;\n"
       << "    op.params[1].tmpref.buffer = out;\n    op.params[1].tmpref.size = 64;\n"
       << "    op.params[2].value.a = v;\n"
       << "    res = TEEC_InvokeCommand(sess, CMD_OP_" << h << ", &op, &origin);\n"
       << "    if (res != TEEC_SUCCESS)\n        return -1;\n    return 0;\n}\n\n";
  std::ofstream(dir / "ta.c") << ta.str();
  std::ofstream(dir / "ca.c") << ca.str();
  out.loc = static_cast<size_t>(line_count(ta.str()) + line_count(ca.str()));
  return out;
}

void performance(Outcome &o) {
  const fs::path root = fs::path(PARTCHECK_BINARY_DIR) / "acceptance";
  const fs::path dir = root / "large_case";
  fs::remove_all(dir);
  int handlers = 60;
  LargeCase made;
  while ((made = write_large_case(dir, handlers)).loc < 5000)
    handlers += 5;
  ScanOptions opts;
  opts.paths = {dir.string()};
  opts.jobs = 1;
  opts.timing = true;
  // Refined, so the size write-back in every handler does not count.
  opts.rules = {true, false, false};
  auto result = run_scan(opts);
  const Timing &t = *result.report.timing;
  o.require(result.loc >= 5000, "only " + std::to_string(result.loc) + " lines analysed");
  o.require(t.flow_ms < 60000, "flow construction " + std::to_string(t.flow_ms) + " ms");
  o.require(t.rules_ms < 1000, "rule matching " + std::to_string(t.rules_ms) + " ms");
  // Findings land in the broken handlers only, and each of those is caught.
  std::vector<bool> caught(made.bugs.size());
  for (const auto &f : result.report.findings) {
    if (f.suppressed_by)
      continue;
    bool inside = false;
    for (size_t b = 0; b < made.bugs.size(); ++b) {
      auto [lo, hi, rule] = made.bugs[b];
      if (f.location.file == "ta.c" && f.location.line >= lo && f.location.line <= hi) {
        inside = true;
        caught[b] = caught[b] || f.rule == rule;
      }
    }
    o.require(inside, "unexpected finding at " + to_string(f.location));
  }
  o.require(std::all_of(caught.begin(), caught.end(), [](bool c) { return c; }),
            "a broken handler was missed");
  const fs::path csv = root / "timing.csv";
  std::ofstream(csv) << timing_csv({{"large_case", result.loc, t.flow_ms, t.rules_ms}});
  o.require(fs::file_size(csv) > 0, "timing CSV not written");
  char buf[240];
  std::snprintf(buf, sizeof buf, "%zu lines, %d handlers, %zu active findings: parse %.1f ms, flows %.1f ms, rules "
                                 "%.2f ms; CSV at %s",
                result.loc, handlers, result.report.active_count(), t.parse_ms, t.flow_ms, t.rules_ms, csv.c_str());
  o.detail << buf;
}

// ---- 7 -----------------------------------------------------------------------

void fuzz(Outcome &o) {
  std::mt19937 rng(99);
  std::vector<std::string> seeds;
  for (const auto &c : load_corpus(corpus_dir()))
    for (const auto &f : c.files)
      seeds.push_back(read_file(c.dir + "/" + f));
  int crashes = 0;
  int with_diagnostics = 0;
  int pipeline_runs = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string bytes;
    if (i % 2 == 0) {
      bytes.resize(rng() % 600);
      for (auto &c : bytes)
        c = static_cast<char>(rng() % 256);
    } else {
      // Mutated real source: random byte edits, deletions and duplications.
      bytes = seeds[rng() % seeds.size()];
      int edits = 1 + static_cast<int>(rng() % 12);
      for (int e = 0; e < edits && !bytes.empty(); ++e) {
        size_t at = rng() % bytes.size();
        switch (rng() % 3) {
        case 0:
          bytes[at] = "{}()[];,*&=<>\"'#\\\n x0"[rng() % 22];
          break;
        case 1:
          bytes.erase(at, 1 + rng() % 20);
          break;
        default:
          bytes.insert(at, bytes.substr(at, rng() % 40));
        }
      }
    }
    try {
      Ast ast = parse_source(SourceUnit::from_text("fuzz.c", bytes), {});
      with_diagnostics += !ast.diagnostics.empty();
      // Run the rest of the pipeline on whatever parsed.
      std::vector<const Ast *> asts{&ast};
      auto cls = classify_params(asts, {});
      for (const auto &root : find_roots(asts)) {
        std::vector<ParamBinding> bindings;
        for (const auto &b : cls.bindings)
          if (b.entry_function == root.fn->name && b.command_id == root.command)
            bindings.push_back(b);
        for (const auto &g : build_root_flows(root, bindings, asts, default_catalog(), {}))
          check_graph(g, default_catalog(), {true, true, true});
        ++pipeline_runs;
      }
    } catch (const Error &) {
      // Reported error, not a crash.
    } catch (const std::exception &e) {
      ++crashes;
      o.require(false, std::string("input ") + std::to_string(i) + ": " + e.what());
    }
  }
  o.detail << "1000 inputs, " << crashes << " crashes, " << with_diagnostics
           << " with diagnostics, " << pipeline_runs << " roots analysed";
}

// ---- 8 -----------------------------------------------------------------------

void sarif(Outcome &o) {
  int validated = 0;
  for (const auto &c : load_corpus(corpus_dir())) {
    for (const RuleConfig &rules : {RuleConfig{}, RuleConfig{true, true, true}}) {
      auto r = scan(c.dir, rules);
      if (r.findings.empty())
        continue;
      auto errors = validate_sarif(emit(r, Format::Sarif));
      ++validated;
      for (const auto &e : errors)
        o.require(false, c.truth.name + ": " + e);
    }
  }
  o.require(validated > 100, "only " + std::to_string(validated) + " reports validated");
  o.detail << validated << " SARIF logs valid";
}

} // namespace

int main() {
  const std::pair<const char *, std::function<void(Outcome &)>> criteria[] = {
      {"exemplar reproduction", exemplars},
      {"false-positive and false-negative regression", fp_fn_regression},
      {"corpus metrics", corpus_metrics},
      {"oracle equivalence", oracle_equivalence},
      {"determinism", determinism},
      {"performance budget", performance},
      {"parser robustness", fuzz},
      {"SARIF validity", sarif},
  };
  std::vector<std::string> lines;
  int failed = 0;
  int index = 0;
  for (const auto &[name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      run(o);
    } catch (const std::exception &e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failed += !o.ok;
    lines.push_back(std::string(o.ok ? "PASS" : "FAIL") + " " + std::to_string(index) + " " +
                    name + ": " + o.detail.str());
  }
  std::cout << "\n";
  for (const auto &l : lines)
    std::cout << l << "\n";
  std::cout << (failed ? std::to_string(failed) + " of 8 criteria failed\n"
                       : "all 8 criteria passed\n");
  return failed ? 1 : 0;
}
