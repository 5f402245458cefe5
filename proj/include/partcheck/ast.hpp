#pragma once

#include "partcheck/source.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace partcheck {

enum class ExprKind {
  Ident,
  IntLit,
  FloatLit,
  StrLit,
  CharLit,
  Call,       // kids[0] callee, kids[1..] arguments
  Member,     // kids[0] base; text = member name; arrow = `->`
  Index,      // kids[0] base, kids[1] index
  Unary,      // text = operator (prefix ++/-- included)
  Postfix,    // text = "++" or "--"
  Binary,     // text = operator
  Assign,     // text = operator ("=", "+=", ...)
  Cond,       // kids: condition, then, else
  Cast,       // text = type spelling, kids[0] operand
  Sizeof,     // kids[0] operand, or text = type spelling when kids empty
  Comma,      // kids: left, right
  InitList,   // kids: elements
  Designator, // text = ".field" or "[n]", kids[0] value
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  ExprKind kind;
  SourceLocation loc;
  std::string text;
  bool arrow = false;
  std::vector<ExprPtr> kids;

  Expr(ExprKind k, SourceLocation l, std::string t = {})
      : kind(k), loc(std::move(l)), text(std::move(t)) {}

  const Expr &kid(size_t i) const { return *kids.at(i); }
};

/// Parsed type, kept as spelling: the analysis only needs base names,
/// pointer depth and array extents.
struct TypeRef {
  std::string base;   // e.g. "unsigned int", "TEE_Param", "struct foo"
  int pointers = 0;
  std::vector<ExprPtr> dims; // one per `[]`; nullptr for `[]`
  bool function_pointer = false;

  bool is_array() const { return !dims.empty(); }
  std::string spelling() const;
};

struct Decl {
  std::string name;
  TypeRef type;
  ExprPtr init;
  SourceLocation loc;
  bool is_typedef = false;
  bool is_static = false;
  bool is_extern = false;
  /// Set for function prototypes.
  bool is_function = false;
  std::vector<Decl> params;
  bool variadic = false;
};

enum class StmtKind {
  Expr,
  Decl,
  Compound,
  If,
  While,
  DoWhile,
  For,
  Switch,
  Case,
  Default,
  Break,
  Continue,
  Return,
  Goto,
  Label,
  Empty,
  Skipped,
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

/// Statement node. Field use by kind:
///   Expr: expr.  Decl: decls.  Compound: body.
///   If: expr (cond), then_s, else_s.  While/DoWhile/Switch: expr, then_s.
///   For: init (Decl/Expr stmt or null), expr (cond or null), step, then_s.
///   Case: expr (value), then_s.  Default/Label: then_s (label in `label`).
///   Return: expr (may be null).  Goto: label.  Skipped: label = reason.
struct Stmt {
  StmtKind kind;
  SourceLocation loc;
  ExprPtr expr;
  ExprPtr step;
  std::vector<Decl> decls;
  std::vector<StmtPtr> body;
  StmtPtr init;
  StmtPtr then_s;
  StmtPtr else_s;
  std::string label;

  Stmt(StmtKind k, SourceLocation l) : kind(k), loc(std::move(l)) {}
};

struct FunctionDef {
  std::string name;
  TypeRef return_type;
  std::vector<Decl> params;
  bool variadic = false;
  bool is_static = false;
  StmtPtr body;
  SourceLocation loc;
  /// True for the function synthesized from top-level statements of a code
  /// snippet.
  bool synthetic = false;
};

inline constexpr const char *kSnippetFunction = "__snippet__";

struct Ast {
  std::string path;
  UnitKind kind = UnitKind::Unknown;
  std::vector<FunctionDef> functions;
  std::vector<Decl> globals;
  /// Function name -> parameter count (prototypes and definitions);
  /// variadic functions map to -1.
  std::map<std::string, int> arities;
  std::set<std::string> typedef_names;
  std::vector<std::string> includes;
  std::vector<Diagnostic> diagnostics;
  size_t line_count = 0;

  const FunctionDef *find_function(std::string_view name) const;
};

/// Strips parentheses and casts.
const Expr &strip_casts(const Expr &e);

/// Renders an expression back to compact C text (for messages and dumps).
std::string render(const Expr &e);

/// Calls `fn` on `e` and every subexpression, pre-order.
template <typename Fn> void walk(const Expr &e, Fn &&fn) {
  fn(e);
  for (const auto &k : e.kids)
    if (k)
      walk(*k, fn);
}

/// Name of a call's callee when it is a plain identifier, else "".
std::string callee_name(const Expr &call);

} // namespace partcheck
