#include "partcheck/ast.hpp"

namespace partcheck {

std::string TypeRef::spelling() const {
  std::string s = base;
  if (pointers > 0)
    s += " " + std::string(static_cast<size_t>(pointers), '*');
  for (const auto &d : dims)
    s += d ? "[" + render(*d) + "]" : "[]";
  return s;
}

const FunctionDef *Ast::find_function(std::string_view name) const {
  for (const auto &f : functions)
    if (f.name == name)
      return &f;
  return nullptr;
}

const Expr &strip_casts(const Expr &e) {
  const Expr *cur = &e;
  while (cur->kind == ExprKind::Cast && !cur->kids.empty())
    cur = cur->kids[0].get();
  return *cur;
}

std::string callee_name(const Expr &call) {
  if (call.kind != ExprKind::Call || call.kids.empty())
    return {};
  const Expr &callee = strip_casts(*call.kids[0]);
  return callee.kind == ExprKind::Ident ? callee.text : std::string{};
}

std::string render(const Expr &e) {
  auto k = [&](size_t i) {
    return i < e.kids.size() && e.kids[i] ? render(*e.kids[i]) : std::string("?");
  };
  switch (e.kind) {
  case ExprKind::Ident:
  case ExprKind::IntLit:
  case ExprKind::FloatLit:
  case ExprKind::StrLit:
  case ExprKind::CharLit:
    return e.text;
  case ExprKind::Call: {
    std::string s = k(0) + "(";
    for (size_t i = 1; i < e.kids.size(); ++i)
      s += (i > 1 ? ", " : "") + k(i);
    return s + ")";
  }
  case ExprKind::Member:
    return k(0) + (e.arrow ? "->" : ".") + e.text;
  case ExprKind::Index:
    return k(0) + "[" + k(1) + "]";
  case ExprKind::Unary:
    return e.text + k(0);
  case ExprKind::Postfix:
    return k(0) + e.text;
  case ExprKind::Binary:
  case ExprKind::Assign:
    return k(0) + " " + e.text + " " + k(1);
  case ExprKind::Cond:
    return k(0) + " ? " + k(1) + " : " + k(2);
  case ExprKind::Cast:
    return "(" + e.text + ")" + k(0);
  case ExprKind::Sizeof:
    return e.kids.empty() ? "sizeof(" + e.text + ")" : "sizeof(" + k(0) + ")";
  case ExprKind::Comma:
    return k(0) + ", " + k(1);
  case ExprKind::InitList: {
    std::string s = "{";
    for (size_t i = 0; i < e.kids.size(); ++i)
      s += (i ? ", " : "") + k(i);
    return s + "}";
  }
  case ExprKind::Designator:
    return e.text + " = " + k(0);
  }
  return "?";
}

} // namespace partcheck
