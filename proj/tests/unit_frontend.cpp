#include "support.hpp"

#include "partcheck/cfg.hpp"
#include "partcheck/lexer.hpp"

#include <doctest.h>

#include <functional>
#include <random>
#include <regex>

using namespace partcheck;
using namespace partcheck::testing;

namespace {

// GlobalPlatform nibbles, written out independently of the built-in table.
const std::map<std::string, unsigned> kNibble = {
    {"TEE_PARAM_TYPE_NONE", 0},          {"TEE_PARAM_TYPE_VALUE_INPUT", 1},
    {"TEE_PARAM_TYPE_VALUE_OUTPUT", 2},  {"TEE_PARAM_TYPE_VALUE_INOUT", 3},
    {"TEE_PARAM_TYPE_MEMREF_INPUT", 5},  {"TEE_PARAM_TYPE_MEMREF_OUTPUT", 6},
    {"TEE_PARAM_TYPE_MEMREF_INOUT", 7},  {"TEEC_NONE", 0},
    {"TEEC_VALUE_INPUT", 1},             {"TEEC_VALUE_OUTPUT", 2},
    {"TEEC_VALUE_INOUT", 3},             {"TEEC_MEMREF_TEMP_INPUT", 5},
    {"TEEC_MEMREF_TEMP_OUTPUT", 6},      {"TEEC_MEMREF_TEMP_INOUT", 7},
    {"TEEC_MEMREF_WHOLE", 0xC},          {"TEEC_MEMREF_PARTIAL_INPUT", 0xD},
    {"TEEC_MEMREF_PARTIAL_OUTPUT", 0xE}, {"TEEC_MEMREF_PARTIAL_INOUT", 0xF},
};

unsigned long pack(const std::vector<unsigned> &v) {
  return v[0] + 16ul * v[1] + 256ul * v[2] + 4096ul * v[3];
}

std::string line_at(const std::string &text, int line) {
  std::istringstream in(text);
  std::string l;
  for (int i = 0; i < line && std::getline(in, l); ++i) {
  }
  return l;
}

} // namespace

TEST_CASE("parameter type packing matches the 4-bit formula") {
  std::mt19937 rng(7);
  std::vector<std::string> names;
  for (const auto &kv : kNibble)
    names.push_back(kv.first);
  for (int round = 0; round < 200; ++round) {
    std::vector<std::string> args;
    std::vector<unsigned> vals;
    for (int k = 0; k < 4; ++k) {
      const auto &n = names[rng() % names.size()];
      args.push_back(n);
      vals.push_back(kNibble.at(n));
    }
    const char *macro = round % 2 ? "TEEC_PARAM_TYPES" : "TEE_PARAM_TYPES";
    std::string src = std::string("uint32_t t = ") + macro + "(" + args[0] + ", " + args[1] +
                      ",\n    " + args[2] + ", " + args[3] + ");\n";
    auto out = preprocess(SourceUnit::from_text("p.c", src), {});
    std::smatch m;
    REQUIRE(std::regex_search(out.text, m, std::regex("0x([0-9A-Fa-f]+)")));
    CHECK(std::stoul(m[1].str(), nullptr, 16) == pack(vals));
    // Line structure survives the multi-line call.
    CHECK(std::count(out.text.begin(), out.text.end(), '\n') == 2);
  }
}

TEST_CASE("plain text passes through the preprocessor unchanged") {
  std::string src = "int f(int a)\n{\n    return a + 1;\n}\n";
  CHECK(preprocess(SourceUnit::from_text("p.c", src), {}).text == src);
}

TEST_CASE("comments are blanked and lines kept") {
  auto text = read_file(fixture("shared_direct") + "/ta.c");
  auto out = preprocess(SourceUnit::from_text("ta.c", text), {});
  CHECK(std::count(out.text.begin(), out.text.end(), '\n') ==
        std::count(text.begin(), text.end(), '\n'));
  CHECK(line_at(out.text, 1).find("shared") == std::string::npos);
  CHECK(line_at(out.text, 2) == line_at(text, 2));
}

TEST_CASE("constant expressions") {
  CHECK(eval_constant("(1 << 4) | 3") == 19);
  CHECK(eval_constant("0x7 & ~0x2") == 5);
  CHECK(eval_constant("10 / 3 + 10 % 3") == 4);
  CHECK_FALSE(eval_constant("foo + 1"));
  CHECK_FALSE(eval_constant("1 / 0"));
}

TEST_CASE("conditional compilation policy") {
  std::string src = "#ifdef CFG_X\nint a;\n#else\nint b;\n#endif\n#if 0\nint c;\n#endif\n";
  FrontendOptions keep_if;
  FrontendOptions keep_else;
  keep_else.conditional = ConditionalPolicy::KeepElse;
  auto a = parse_source(SourceUnit::from_text("c.c", src), keep_if);
  auto b = parse_source(SourceUnit::from_text("c.c", src), keep_else);
  REQUIRE(a.globals.size() == 1);
  REQUIRE(b.globals.size() == 1);
  CHECK(a.globals[0].name == "a");
  CHECK(b.globals[0].name == "b");
}

TEST_CASE("unchecked_copy snippet parses into one synthetic function") {
  auto ast = parse_unit(fixture("unchecked_copy") + "/ta.c", {}, "ta.c");
  CHECK(ast.diagnostics.empty());
  REQUIRE(ast.functions.size() == 1);
  const auto &fn = ast.functions[0];
  CHECK(fn.synthetic);
  CHECK(fn.name == kSnippetFunction);
  REQUIRE(fn.body);
  REQUIRE(fn.body->body.size() == 2);
  const Stmt &call = *fn.body->body[1];
  REQUIRE(call.kind == StmtKind::Expr);
  CHECK(callee_name(*call.expr) == "TEE_MemMove");
  CHECK(call.loc.line == 3);
  CHECK(call.loc.column == 1);
  CHECK(render(call.expr->kid(2)) == "params[1].memref.buffer");
}

TEST_CASE("inline assembly is skipped with a diagnostic") {
  auto ast = parse_text("int f(void)\n{\n    int x = 1;\n    __asm__ volatile(\"nop\");\n"
                        "    return x;\n}\n");
  REQUIRE(ast.functions.size() == 1);
  REQUIRE(ast.diagnostics.size() == 1);
  CHECK(ast.diagnostics[0].loc.line == 4);
  CHECK(ast.diagnostics[0].message.find("inline assembly") != std::string::npos);
  const auto &body = ast.functions[0].body->body;
  REQUIRE(body.size() == 3);
  CHECK(body[1]->kind == StmtKind::Skipped);
  CHECK(body[2]->kind == StmtKind::Return);
}

TEST_CASE("locations point into the original text") {
  for (const auto &dir : all_case_dirs()) {
    auto text = read_file(dir + "/ta.c");
    auto ast = parse_unit(dir + "/ta.c", {}, "ta.c");
    for (const auto &fn : ast.functions) {
      std::function<void(const Expr &)> check_expr = [&](const Expr &e) {
        if (e.kind != ExprKind::Ident || !e.loc.valid())
          return;
        std::string l = line_at(text, e.loc.line);
        INFO(dir << " " << e.text << " at " << to_string(e.loc));
        CHECK(l.compare(static_cast<size_t>(e.loc.column - 1), e.text.size(), e.text) == 0);
      };
      std::function<void(const Stmt &)> check_stmt = [&](const Stmt &s) {
        for (const Expr *e : {s.expr.get(), s.step.get()})
          if (e)
            walk(*e, check_expr);
        for (const auto &d : s.decls)
          if (d.init)
            walk(*d.init, check_expr);
        for (const auto &b : s.body)
          check_stmt(*b);
        for (const Stmt *k : {s.init.get(), s.then_s.get(), s.else_s.get()})
          if (k)
            check_stmt(*k);
      };
      if (fn.body)
        check_stmt(*fn.body);
    }
  }
}

TEST_CASE("random bytes never crash the parser") {
  std::mt19937 rng(1234);
  for (int i = 0; i < 200; ++i) {
    std::string bytes(rng() % 400, '\0');
    for (auto &c : bytes)
      c = static_cast<char>(rng() % 256);
    auto ast = parse_source(SourceUnit::from_text("f.c", bytes), {});
    CHECK(ast.path == "f.c");
  }
}

TEST_CASE("unit classification") {
  CHECK(classify_unit(parse_unit(fixture("split_entry") + "/ca.c", {})) == UnitKind::CA);
  CHECK(classify_unit(parse_unit(fixture("split_entry") + "/entry.c", {})) == UnitKind::TA);
  CHECK(classify_unit(parse_text("int add(int a, int b) { return a + b; }\n")) ==
        UnitKind::Unknown);
  CHECK(is_ta_entry_point("TA_InvokeCommandEntryPoint"));
  CHECK_FALSE(is_ta_entry_point("main"));
}

TEST_CASE("non-UTF-8 files are rejected") {
  CHECK(is_valid_utf8("plain ascii"));
  CHECK(is_valid_utf8("caf\xc3\xa9"));
  CHECK_FALSE(is_valid_utf8("\xff\xfe"));
  CHECK_FALSE(is_valid_utf8("\xc3"));
}

// ---- control flow ----------------------------------------------------------

namespace {

// a dominates b when every acyclic entry path to b passes a.
bool dominates_by_paths(const Cfg &cfg, int a, int b) {
  bool all = true;
  std::vector<char> on(cfg.blocks.size(), 0);
  std::function<void(int, bool)> go = [&](int x, bool seen_a) {
    if (!all)
      return;
    seen_a = seen_a || x == a;
    if (x == b) {
      all = all && seen_a;
      return;
    }
    on[static_cast<size_t>(x)] = 1;
    for (int y : cfg.blocks[static_cast<size_t>(x)].succs)
      if (!on[static_cast<size_t>(y)])
        go(y, seen_a);
    on[static_cast<size_t>(x)] = 0;
  };
  go(cfg.entry, false);
  return all;
}

} // namespace

TEST_CASE("dominance equals path enumeration on every case function") {
  int functions = 0;
  for (const auto &dir : all_case_dirs()) {
    auto ast = parse_unit(dir + "/ta.c", {}, "ta.c");
    for (const auto &fn : ast.functions) {
      Cfg cfg = build_cfg(fn);
      if (cfg.blocks.size() > 40)
        continue;
      ++functions;
      for (const auto &a : cfg.blocks)
        for (const auto &b : cfg.blocks) {
          INFO(dir << " " << fn.name << " " << a.id << " dom " << b.id);
          CHECK(cfg.dominates(a.id, b.id) == dominates_by_paths(cfg, a.id, b.id));
        }
    }
  }
  CHECK(functions > 100);
}

TEST_CASE("guarded_copy: the copy is dominated by the size check") {
  auto ast = parse_unit(fixture("guarded_copy") + "/ta.c", {}, "ta.c");
  const auto &fn = ast.functions.at(0);
  Cfg cfg = build_cfg(fn);
  const Stmt &if_s = *fn.body->body.at(0);
  CfgPos cond = cfg.position_of(if_s.expr.get());
  const Stmt &then_s = *if_s.then_s;
  CfgPos copy = cfg.position_of(then_s.kind == StmtKind::Compound ? then_s.body.at(0).get()
                                                                  : &then_s);
  REQUIRE(cond.valid());
  REQUIRE(copy.valid());
  CHECK(cfg.dominates(cond, copy));
  CHECK_FALSE(cfg.dominates(copy, cond));
}

TEST_CASE("straight-line code is one block") {
  auto ast = parse_text("void f(void)\n{\n    a = 1;\n    b = 2;\n    c = 3;\n}\n");
  Cfg cfg = build_cfg(ast.functions.at(0));
  int with_elements = 0;
  for (const auto &b : cfg.blocks)
    if (!b.elements.empty()) {
      ++with_elements;
      CHECK(b.elements.size() == 3);
      CHECK(cfg.dominates(cfg.entry, b.id));
    }
  CHECK(with_elements == 1);
}

TEST_CASE("early return: code after the if is not dominated by the then-branch") {
  auto ast = parse_text("int f(int x)\n{\n    if (x > 4) {\n        g();\n        return 1;\n"
                        "    }\n    h();\n    return 0;\n}\n");
  const auto &fn = ast.functions.at(0);
  Cfg cfg = build_cfg(fn);
  const Stmt &if_s = *fn.body->body.at(0);
  CfgPos then_call = cfg.position_of(if_s.then_s->body.at(0).get());
  CfgPos after = cfg.position_of(fn.body->body.at(1).get());
  CfgPos cond = cfg.position_of(if_s.expr.get());
  CHECK_FALSE(cfg.dominates(then_call, after));
  CHECK(cfg.dominates(cond, after));
  CHECK(dominates_by_paths(cfg, cond.block, after.block));
  CHECK_FALSE(dominates_by_paths(cfg, then_call.block, after.block));
}

TEST_CASE("lexer keeps byte columns") {
  auto unit = preprocess(SourceUnit::from_text("l.c", "a  = b->c;\n  x++;\n"), {});
  auto toks = tokenize(unit);
  REQUIRE(toks.size() >= 9);
  CHECK(toks[0].text == "a");
  CHECK(unit.locate(toks[1].offset).column == 4);
  CHECK(toks[3].text == "->");
  CHECK(unit.locate(toks[7].offset).line == 2);
  CHECK(toks.back().kind == TokenKind::End);
}
