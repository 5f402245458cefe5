#include "support.hpp"

#include <doctest.h>

using namespace partcheck;
using namespace partcheck::testing;

namespace {

std::vector<const Ast *> ptrs(const std::deque<Ast> &asts) {
  std::vector<const Ast *> out;
  for (const auto &a : asts)
    out.push_back(&a);
  return out;
}

const ParamBinding *binding(const Classification &c, const std::string &fn, int index) {
  for (const auto &b : c.bindings)
    if (b.entry_function == fn && b.index == index)
      return &b;
  return nullptr;
}

} // namespace

TEST_CASE("parameter type nibbles") {
  struct Row {
    unsigned nibble;
    ParamRole role;
    ParamKind kind;
  };
  const Row rows[] = {
      {0x0, ParamRole::Unknown, ParamKind::None},
      {0x1, ParamRole::Input, ParamKind::Value},
      {0x2, ParamRole::Output, ParamKind::Value},
      {0x3, ParamRole::InOut, ParamKind::Value},
      {0x5, ParamRole::Input, ParamKind::TempMemref},
      {0x6, ParamRole::Output, ParamKind::TempMemref},
      {0x7, ParamRole::InOut, ParamKind::TempMemref},
      {0xC, ParamRole::SharedMemory, ParamKind::RegisteredMemref},
      {0xD, ParamRole::SharedMemory, ParamKind::RegisteredMemref},
      {0xE, ParamRole::SharedMemory, ParamKind::RegisteredMemref},
      {0xF, ParamRole::SharedMemory, ParamKind::RegisteredMemref},
  };
  for (const auto &r : rows) {
    INFO("nibble " << r.nibble);
    auto [role, kind] = decode_param_type(r.nibble);
    CHECK(role == r.role);
    CHECK(kind == r.kind);
  }
}

TEST_CASE("role and kind names round-trip") {
  for (auto r : {ParamRole::Input, ParamRole::Output, ParamRole::InOut,
                 ParamRole::SharedMemory, ParamRole::Unknown})
    CHECK(parse_role(to_string(r)) == r);
  for (auto k : {ParamKind::None, ParamKind::Value, ParamKind::TempMemref,
                 ParamKind::RegisteredMemref})
    CHECK(parse_kind(to_string(k)) == k);
  CHECK_FALSE(parse_role("sideways"));
}

TEST_CASE("default catalog classes") {
  auto c = default_catalog();
  CHECK(c.classify("TEE_CipherUpdate") == CatalogClass::Enc);
  CHECK(c.classify("TEE_AsymmetricEncrypt") == CatalogClass::Enc);
  CHECK(c.classify("TEE_MemMove") == CatalogClass::Copy);
  CHECK(c.classify("memcpy") == CatalogClass::Copy);
  CHECK(c.classify("strcpy") == CatalogClass::Copy);
  CHECK(c.classify("TEE_Malloc") == CatalogClass::Alloc);
  CHECK(c.classify("TEE_MemCompare") == CatalogClass::Cmp);
  CHECK(c.classify("snprintf") == CatalogClass::Fmt);
  CHECK(c.classify("helper") == CatalogClass::None);
  CHECK(c.fmt_fns.at("snprintf").first_variadic == 3);
  CHECK(c.fmt_fns.at("sprintf").first_variadic == 2);
}

TEST_CASE("catalog JSON round-trips") {
  auto c = default_catalog();
  CHECK(load_catalog(catalog_to_json(c)) == c);
  auto custom = load_catalog(std::string(
      R"({"enc": ["my_seal"], "copy": {"blit": {"dest": 1, "src": 0, "len": 2}}})"));
  CHECK(custom.classify("my_seal") == CatalogClass::Enc);
  CHECK(custom.copy_fns.at("blit") == CopySig{1, 0, 2});
  CHECK(load_catalog(catalog_to_json(custom)) == custom);
}

TEST_CASE("a catalog entry moves a function between classes") {
  auto c = load_catalog(std::string(R"({"cmp": ["memcpy"]})"));
  CHECK(c.classify("memcpy") == CatalogClass::Cmp);
  CHECK_FALSE(c.copy_fns.count("memcpy"));
}

TEST_CASE("malformed catalogs are config errors") {
  CHECK_THROWS_AS(load_catalog(std::string("{")), ConfigError);
  CHECK_THROWS_AS(load_catalog(std::string("[]")), ConfigError);
  CHECK_THROWS_AS(load_catalog(std::string(R"({"crypto": []})")), ConfigError);
  CHECK_THROWS_AS(load_catalog(std::string(R"({"copy": {"x": {"dest": -2, "src": 1}}})")),
                  ConfigError);
}

TEST_CASE("catalog arity check") {
  auto ast = parse_text("void blit(void *d, const void *s);\n");
  auto ok = load_catalog(std::string(R"({"copy": {"blit": {"dest": 0, "src": 1}}})"));
  CHECK_NOTHROW(ok.check_arity({&ast}));
  auto bad = load_catalog(std::string(R"({"copy": {"blit": {"dest": 0, "src": 1, "len": 2}}})"));
  CHECK_THROWS_AS(bad.check_arity({&ast}), ConfigError);
}

TEST_CASE("annotation table") {
  auto a = parse_annotations("# entry, command, index, role, kind\n\n"
                             "TA_InvokeCommandEntryPoint, CMD_X, 1, input, temp\n"
                             "handler, *, 3, shared, registered\n");
  REQUIRE(a.size() == 2);
  CHECK(a[0].command_id == "CMD_X");
  CHECK(a[0].index == 1);
  CHECK(a[0].role == ParamRole::Input);
  CHECK_FALSE(a[1].command_id);
  CHECK(a[1].kind == ParamKind::RegisteredMemref);
}

TEST_CASE("annotation errors name the line") {
  try {
    parse_annotations("f, *, 0, input, value\nf, *, 7, input, value\n");
    FAIL("expected a ConfigError");
  } catch (const ConfigError &e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_annotations("f, *, 0, sideways, value\n"), ConfigError);
  CHECK_THROWS_AS(parse_annotations("f, 0, input\n"), ConfigError);
}

TEST_CASE("parameter references") {
  auto ast = parse_text("void f(void) { x = params[2].memref.buffer; y = params[1].value.b; "
                        "z = params[3]; w = other[1].value.a; }\n");
  const auto &body = ast.functions.at(0).body->body;
  auto rhs = [&](size_t i) -> const Expr & { return body.at(i)->expr->kid(1); };
  auto r0 = match_param_ref(rhs(0), "params");
  REQUIRE(r0);
  CHECK(r0->index == 2);
  CHECK(r0->field == "buffer");
  auto r1 = match_param_ref(rhs(1), "params");
  REQUIRE(r1);
  CHECK(r1->field == "b");
  auto r2 = match_param_ref(rhs(2), "params");
  REQUIRE(r2);
  CHECK(r2->field.empty());
  CHECK_FALSE(match_param_ref(rhs(3), "params"));
}

TEST_CASE("client-side evidence classifies the TA's parameters") {
  auto p = load_program(fixture("split_entry"));
  auto c = classify_params(ptrs(p.asts), {});
  const auto *b = binding(c, "TA_InvokeCommandEntryPoint", 0);
  REQUIRE(b);
  CHECK(b->role == ParamRole::Output);
  CHECK(b->kind == ParamKind::Value);
  CHECK(b->evidence == Evidence::CaSide);
  CHECK(b->file == "entry.c");
  CHECK(b->location.file == "ca.c");
  const auto *none = binding(c, "TA_InvokeCommandEntryPoint", 1);
  REQUIRE(none);
  CHECK(none->role == ParamRole::Unknown);
}

TEST_CASE("TA-side type check is used without client code") {
  const char *ta =
      "TEE_Result TA_InvokeCommandEntryPoint(void *s, uint32_t cmd, uint32_t param_types,\n"
      "                                      TEE_Param params[4])\n"
      "{\n"
      "    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_MEMREF_INPUT,\n"
      "                                   TEE_PARAM_TYPE_VALUE_OUTPUT,\n"
      "                                   TEE_PARAM_TYPE_NONE, TEE_PARAM_TYPE_NONE);\n"
      "    if (param_types != exp)\n"
      "        return TEE_ERROR_BAD_PARAMETERS;\n"
      "    params[1].value.a = 1;\n"
      "    return TEE_SUCCESS;\n"
      "}\n";
  auto ast = parse_text(ta, "ta.c");
  auto c = classify_params({&ast}, {});
  const auto *in = binding(c, "TA_InvokeCommandEntryPoint", 0);
  const auto *out = binding(c, "TA_InvokeCommandEntryPoint", 1);
  REQUIRE(in);
  REQUIRE(out);
  CHECK(in->role == ParamRole::Input);
  CHECK(in->kind == ParamKind::TempMemref);
  CHECK(in->evidence == Evidence::TaSide);
  CHECK(out->role == ParamRole::Output);
  CHECK(out->kind == ParamKind::Value);
}

TEST_CASE("annotations fill slots without code evidence") {
  auto ast = parse_text("TEE_Result TA_InvokeCommandEntryPoint(void *s, uint32_t cmd, "
                        "uint32_t t, TEE_Param params[4])\n{\n"
                        "    TEE_MemMove(buf, params[2].memref.buffer, 8);\n"
                        "    return TEE_SUCCESS;\n}\n",
                        "ta.c");
  auto ann = parse_annotations("TA_InvokeCommandEntryPoint, *, 2, shared, registered\n");
  auto c = classify_params({&ast}, ann);
  const auto *b = binding(c, "TA_InvokeCommandEntryPoint", 2);
  REQUIRE(b);
  CHECK(b->role == ParamRole::SharedMemory);
  CHECK(b->evidence == Evidence::Annotation);
  auto bare = classify_params({&ast}, {});
  CHECK(binding(bare, "TA_InvokeCommandEntryPoint", 2)->role == ParamRole::Unknown);
}

TEST_CASE("value/memref disagreement between the two sides is reported") {
  auto ca = parse_text("int main(void)\n{\n"
                       "    op.paramTypes = TEEC_PARAM_TYPES(TEEC_VALUE_INPUT, TEEC_NONE,\n"
                       "                                     TEEC_NONE, TEEC_NONE);\n"
                       "    TEEC_InvokeCommand(&sess, 1, &op, &origin);\n"
                       "    return 0;\n}\n",
                       "ca.c");
  auto ta = parse_text(
      "TEE_Result TA_InvokeCommandEntryPoint(void *s, uint32_t cmd, uint32_t param_types,\n"
      "                                      TEE_Param params[4])\n{\n"
      "    if (param_types != TEE_PARAM_TYPES(TEE_PARAM_TYPE_MEMREF_INPUT, 0, 0, 0))\n"
      "        return TEE_ERROR_BAD_PARAMETERS;\n"
      "    return TEE_SUCCESS;\n}\n",
      "ta.c");
  auto c = classify_params({&ca, &ta}, {});
  const auto *b = binding(c, "TA_InvokeCommandEntryPoint", 0);
  REQUIRE(b);
  CHECK(b->kind == ParamKind::Value);
  CHECK(b->evidence == Evidence::CaSide);
  bool conflict = false;
  for (const auto &w : c.warnings)
    conflict = conflict || w.message.find("conflict") != std::string::npos;
  CHECK(conflict);
}

TEST_CASE("dispatch branches become separate roots") {
  auto p = load_program(corpus_dir() + "/r1_34_combined");
  std::vector<std::string> roots;
  for (const auto &r : p.roots)
    roots.push_back(r.fn->name + "/" + r.command.value_or("-"));
  // Command macros are expanded on the TA side.
  CHECK(roots == std::vector<std::string>{"TA_InvokeCommandEntryPoint/-", "cmd_export/1",
                                          "cmd_ping/2"});
  std::vector<const Ast *> asts;
  for (const auto &a : p.asts)
    asts.push_back(&a);
  auto c = classify_params(asts, {});
  const auto *ping = binding(c, "cmd_ping", 0);
  REQUIRE(ping);
  CHECK(ping->role == ParamRole::Input);
  CHECK(ping->kind == ParamKind::Value);
  CHECK(ping->evidence == Evidence::TaSide);
}

TEST_CASE("callees reached with the parameter array are not roots") {
  auto p = load_program(fixture("split_entry"));
  REQUIRE(p.roots.size() == 1);
  CHECK(p.roots[0].fn->name == "TA_InvokeCommandEntryPoint");
}
