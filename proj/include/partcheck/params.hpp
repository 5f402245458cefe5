#pragma once

#include "partcheck/ast.hpp"

#include <optional>
#include <string>
#include <vector>

namespace partcheck {

enum class ParamRole { Input, Output, InOut, SharedMemory, Unknown };
enum class ParamKind { None, Value, TempMemref, RegisteredMemref };
enum class Evidence { None, CaSide, TaSide, Annotation };

const char *to_string(ParamRole r);
const char *to_string(ParamKind k);
const char *to_string(Evidence e);
std::optional<ParamRole> parse_role(std::string_view s);
std::optional<ParamKind> parse_kind(std::string_view s);

/// One cross-world parameter slot of one entry function (and command).
struct ParamBinding {
  std::string entry_function;
  std::optional<std::string> command_id;
  int index = 0;
  ParamRole role = ParamRole::Unknown;
  ParamKind kind = ParamKind::None;
  Evidence evidence = Evidence::None;
  SourceLocation location;
  /// File defining the entry function.
  std::string file;

  auto operator<=>(const ParamBinding &) const = default;
};

/// Role/kind from a GlobalPlatform parameter-type nibble (either world's
/// encoding). Returns {Unknown, None} for TEE_PARAM_TYPE_NONE.
std::pair<ParamRole, ParamKind> decode_param_type(unsigned nibble);

/// A reference to a field of the cross-world parameter array:
/// `params[k].memref.buffer` gives {k, "buffer"}, `params[k].value.a` gives
/// {k, "a"}, a bare `params[k]` gives {k, ""}.
struct ParamRef {
  int index = 0;
  std::string field;
};

std::optional<ParamRef> match_param_ref(const Expr &e, std::string_view params_name);

/// A function analysed as the TEE side of one entry (and command).
struct ParamRoot {
  const Ast *ast = nullptr;
  const FunctionDef *fn = nullptr;
  std::optional<std::string> command;
  /// Name of the TEE_Param array inside `fn` (a formal or, in snippets, a
  /// free identifier).
  std::string params_name;
  /// Statements of the dispatching `case` branch, if dispatched.
  std::vector<const Stmt *> dispatch_branch;
  /// Parameter indices the root (or a TEE_Param-typed callee) touches.
  unsigned used_mask = 0;
};

/// Finds the roots among functions of non-CA units. Functions reached from
/// another candidate by passing the parameter array are callees, not roots,
/// unless the call is a command dispatch in a switch. Sorted by
/// (file, function, command).
std::vector<ParamRoot> find_roots(const std::vector<const Ast *> &asts);

/// Name of the TEE_Param array in `fn`, or "" if it touches none.
std::string params_name_of(const FunctionDef &fn, const Ast &ast);

struct Annotation {
  std::string entry_function;
  std::optional<std::string> command_id; // nullopt for `*`
  int index = 0;
  ParamRole role = ParamRole::Unknown;
  ParamKind kind = ParamKind::None;
};

/// Parses an annotation table. Blank lines and `#` comments are ignored.
/// Throws ConfigError naming the offending line.
std::vector<Annotation> parse_annotations(const std::string &text);

struct Classification {
  /// Four bindings per root, sorted by (entry, command, index).
  std::vector<ParamBinding> bindings;
  std::vector<Diagnostic> warnings;
};

/// Step 1: role and kind of every parameter slot of every root. Evidence
/// precedence is client code, then the TA's parameter-type check, then
/// annotations. A value-vs-memref disagreement between the two code sides
/// is reported as a conflict warning and the client side wins.
Classification classify_params(const std::vector<const Ast *> &asts,
                               const std::vector<Annotation> &annotations);

} // namespace partcheck
