#include "partcheck/catalog.hpp"

#include <json.hpp>

namespace partcheck {

using nlohmann::json;

const char *to_string(CatalogClass c) {
  switch (c) {
  case CatalogClass::None:
    return "none";
  case CatalogClass::Enc:
    return "enc";
  case CatalogClass::Copy:
    return "copy";
  case CatalogClass::Alloc:
    return "alloc";
  case CatalogClass::Cmp:
    return "cmp";
  case CatalogClass::Fmt:
    return "fmt";
  }
  return "none";
}

CatalogClass ApiCatalog::classify(std::string_view fn) const {
  std::string name(fn);
  if (enc_fns.count(name))
    return CatalogClass::Enc;
  if (copy_fns.count(name))
    return CatalogClass::Copy;
  if (alloc_fns.count(name))
    return CatalogClass::Alloc;
  if (cmp_fns.count(name))
    return CatalogClass::Cmp;
  if (fmt_fns.count(name))
    return CatalogClass::Fmt;
  return CatalogClass::None;
}

ApiCatalog default_catalog() {
  ApiCatalog c;
  c.enc_fns = {"TEE_CipherUpdate", "TEE_CipherDoFinal", "TEE_AsymmetricEncrypt",
               "TEE_AEUpdate", "TEE_AEEncryptFinal"};
  c.copy_fns = {{"TEE_MemMove", {0, 1, 2}},
                {"memcpy", {0, 1, 2}},
                {"memmove", {0, 1, 2}},
                {"strcpy", {0, 1, -1}},
                {"strncpy", {0, 1, 2}}};
  c.alloc_fns = {{"TEE_Malloc", 0}, {"malloc", 0}, {"calloc", 1}};
  c.cmp_fns = {"TEE_MemCompare", "memcmp"};
  c.fmt_fns = {{"snprintf", {0, 1, 3}}, {"sprintf", {0, -1, 2}}};
  return c;
}

namespace {

void erase_everywhere(ApiCatalog &c, const std::string &name) {
  c.enc_fns.erase(name);
  c.copy_fns.erase(name);
  c.alloc_fns.erase(name);
  c.cmp_fns.erase(name);
  c.fmt_fns.erase(name);
}

int arg_index(const json &v, const std::string &where, bool optional) {
  if (optional && v.is_null())
    return -1;
  if (!v.is_number_integer())
    throw ConfigError("catalog: " + where + " must be an integer");
  long long i = v.get<long long>();
  if (i < (optional ? -1 : 0) || i > 63)
    throw ConfigError("catalog: bad argument index " + std::to_string(i) +
                      " for " + where);
  return static_cast<int>(i);
}

int field(const json &obj, const char *key, const std::string &name, bool optional) {
  if (!obj.contains(key)) {
    if (optional)
      return -1;
    throw ConfigError("catalog: " + name + " is missing \"" + key + "\"");
  }
  return arg_index(obj.at(key), name + "." + key, optional);
}

std::vector<std::string> names_of(const json &section, const char *cat) {
  if (!section.is_array())
    throw ConfigError(std::string("catalog: section \"") + cat +
                      "\" must be a list of names");
  std::vector<std::string> out;
  for (const auto &v : section) {
    if (!v.is_string())
      throw ConfigError(std::string("catalog: section \"") + cat +
                        "\" must be a list of names");
    out.push_back(v.get<std::string>());
  }
  return out;
}

} // namespace

ApiCatalog load_catalog(const std::optional<std::string> &config) {
  ApiCatalog c = default_catalog();
  if (!config)
    return c;
  json doc;
  try {
    doc = json::parse(*config);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("catalog: malformed JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw ConfigError("catalog: top level must be an object");
  for (const auto &[cat, section] : doc.items()) {
    if (cat == "enc" || cat == "cmp") {
      for (const auto &name : names_of(section, cat.c_str())) {
        erase_everywhere(c, name);
        (cat == "enc" ? c.enc_fns : c.cmp_fns).insert(name);
      }
    } else if (cat == "copy" || cat == "alloc" || cat == "fmt") {
      if (!section.is_object())
        throw ConfigError("catalog: section \"" + cat + "\" must be an object");
      for (const auto &[name, spec] : section.items()) {
        if (cat == "alloc") {
          const json &size = spec.is_object() && spec.contains("size") ? spec.at("size") : spec;
          int idx = arg_index(size, name + ".size", false);
          erase_everywhere(c, name);
          c.alloc_fns[name] = idx;
          continue;
        }
        if (!spec.is_object())
          throw ConfigError("catalog: entry " + name + " must be an object");
        if (cat == "copy") {
          CopySig sig{field(spec, "dest", name, false), field(spec, "src", name, false),
                      field(spec, "len", name, true)};
          erase_everywhere(c, name);
          c.copy_fns[name] = sig;
        } else {
          FmtSig sig{field(spec, "dest", name, false), field(spec, "len", name, true),
                     field(spec, "first_variadic", name, false)};
          erase_everywhere(c, name);
          c.fmt_fns[name] = sig;
        }
      }
    } else {
      throw ConfigError("catalog: unknown category \"" + cat + "\"");
    }
  }
  return c;
}

std::string catalog_to_json(const ApiCatalog &c) {
  json doc = json::object();
  doc["enc"] = c.enc_fns;
  doc["cmp"] = c.cmp_fns;
  json copy = json::object();
  for (const auto &[name, sig] : c.copy_fns)
    copy[name] = {{"dest", sig.dest}, {"src", sig.src}, {"len", sig.len < 0 ? json() : json(sig.len)}};
  doc["copy"] = copy;
  json alloc = json::object();
  for (const auto &[name, size] : c.alloc_fns)
    alloc[name] = {{"size", size}};
  doc["alloc"] = alloc;
  json fmt = json::object();
  for (const auto &[name, sig] : c.fmt_fns)
    fmt[name] = {{"dest", sig.dest},
                 {"len", sig.len < 0 ? json() : json(sig.len)},
                 {"first_variadic", sig.first_variadic}};
  doc["fmt"] = fmt;
  return doc.dump(2);
}

void ApiCatalog::check_arity(const std::vector<const Ast *> &asts) const {
  auto check = [&](const std::string &name, std::initializer_list<int> idx) {
    for (const Ast *ast : asts) {
      auto it = ast->arities.find(name);
      if (it == ast->arities.end() || it->second < 0)
        continue;
      for (int i : idx) {
        if (i >= it->second)
          throw ConfigError("catalog: argument index " + std::to_string(i) +
                            " of " + name + " exceeds its arity " +
                            std::to_string(it->second) + " (" + ast->path + ")");
      }
    }
  };
  for (const auto &[name, sig] : copy_fns)
    check(name, {sig.dest, sig.src, sig.len});
  for (const auto &[name, size] : alloc_fns)
    check(name, {size});
  for (const auto &[name, sig] : fmt_fns)
    check(name, {sig.dest, sig.len});
}

} // namespace partcheck
