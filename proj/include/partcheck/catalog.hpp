#pragma once

#include "partcheck/ast.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace partcheck {

enum class CatalogClass { None, Enc, Copy, Alloc, Cmp, Fmt };

const char *to_string(CatalogClass c);

/// Argument positions of a copy-like call. -1 means "no such argument".
struct CopySig {
  int dest = 0;
  int src = 1;
  int len = 2;
  auto operator<=>(const CopySig &) const = default;
};

struct FmtSig {
  int dest = 0;
  int len = -1;
  int first_variadic = 2;
  auto operator<=>(const FmtSig &) const = default;
};

/// Classification tables for the calls that matter to the rules.
struct ApiCatalog {
  std::set<std::string> enc_fns;
  std::map<std::string, CopySig> copy_fns;
  std::map<std::string, int> alloc_fns; // name -> size argument
  std::set<std::string> cmp_fns;
  std::map<std::string, FmtSig> fmt_fns;

  CatalogClass classify(std::string_view fn) const;

  /// Throws ConfigError if any argument index exceeds the arity of a
  /// function declared or defined in `asts`.
  void check_arity(const std::vector<const Ast *> &asts) const;

  bool operator==(const ApiCatalog &) const = default;
};

/// The built-in GlobalPlatform / libc catalog.
ApiCatalog default_catalog();

/// Default catalog merged with the JSON document `config` (if any). The
/// document is an object with optional sections "enc", "copy", "alloc",
/// "cmp", "fmt"; an entry in a section replaces any same-named entry in
/// another section. Throws ConfigError.
ApiCatalog load_catalog(const std::optional<std::string> &config);

/// The same as a JSON document (round-trips through load_catalog).
std::string catalog_to_json(const ApiCatalog &catalog);

} // namespace partcheck
