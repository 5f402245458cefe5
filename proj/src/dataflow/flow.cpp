#include "partcheck/flow.hpp"
#include "partcheck/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <tuple>

namespace partcheck {

const char *to_string(OpKind k) {
  switch (k) {
  case OpKind::Assign:
    return "assign";
  case OpKind::Call:
    return "call";
  case OpKind::ArrayAccess:
    return "array";
  case OpKind::CondExpr:
    return "cond";
  case OpKind::Return:
    return "return";
  case OpKind::MemberRead:
    return "member";
  }
  return "?";
}

const char *to_string(View v) {
  switch (v) {
  case View::Output:
    return "output";
  case View::Input:
    return "input";
  case View::Shared:
    return "shared";
  }
  return "?";
}

const char *to_string(IscKind k) {
  switch (k) {
  case IscKind::None:
    return "none";
  case IscKind::ShallowCopy:
    return "shallow-copy";
  case IscKind::SizeRead:
    return "size-read";
  case IscKind::DirectUse:
    return "direct-use";
  }
  return "?";
}

std::string tags_to_string(unsigned tags) {
  static const std::pair<unsigned, const char *> names[] = {
      {tag::Source, "Source"}, {tag::Sink, "Sink"}, {tag::SC, "SC"},
      {tag::ISC, "ISC"},       {tag::CS, "CS"}};
  std::string out;
  for (const auto &[bit, name] : names) {
    if (tags & bit) {
      if (!out.empty())
        out += ',';
      out += name;
    }
  }
  return out.empty() ? "-" : out;
}

std::vector<View> views_for(ParamRole role) {
  switch (role) {
  case ParamRole::Input:
    return {View::Input};
  case ParamRole::Output:
    return {View::Output};
  case ParamRole::InOut:
    return {View::Output, View::Input};
  case ParamRole::SharedMemory:
    return {View::Shared};
  case ParamRole::Unknown:
    return {};
  }
  return {};
}

std::vector<std::vector<int>> FlowGraph::successors() const {
  std::vector<std::vector<int>> succ(nodes.size());
  for (const auto &e : edges)
    succ[static_cast<size_t>(e.from)].push_back(e.to);
  return succ;
}

namespace {

enum class Role { Value, Dest, Src, Len, Base, Index, Cond, Arg, Format, Variadic, Returned };

using FieldRead = std::pair<int, std::string>;

struct ValInfo {
  std::set<int> deps;
  std::set<FieldRead> params;
  std::set<int> alias;
  bool literal_only = false;
  bool free = false;
  bool length_like = false;
  bool is_params_array = false;

  void absorb(const ValInfo &o) {
    deps.insert(o.deps.begin(), o.deps.end());
    params.insert(o.params.begin(), o.params.end());
    free = free || o.free;
  }
};

ValInfo combine(const std::vector<ValInfo> &parts, bool keep_alias) {
  ValInfo out;
  out.literal_only = true;
  for (const auto &p : parts) {
    out.absorb(p);
    out.literal_only = out.literal_only && p.literal_only;
    if (keep_alias)
      out.alias.insert(p.alias.begin(), p.alias.end());
  }
  return out;
}

struct Operand {
  Role role;
  ValInfo info;
};

struct Op {
  int id = 0;
  OpKind kind = OpKind::Assign;
  CatalogClass cls = CatalogClass::None;
  int ctx = 0;
  CfgPos pos;
  SourceLocation loc;
  SourceLocation op_loc;
  std::string symbol;
  std::string function;
  std::string text;
  std::vector<std::string> args;
  std::vector<Operand> operands;
  std::set<int> result_alias;
  bool result_length_like = false;
  std::optional<FieldRead> writes_param;
  std::set<int> writes_alias;
  bool write_access = false;
  int loop_cond = -1;
};

bool all_caps(const std::string &s) {
  bool letter = false;
  for (char c : s) {
    if (std::isupper(static_cast<unsigned char>(c)))
      letter = true;
    else if (!std::isdigit(static_cast<unsigned char>(c)) && c != '_')
      return false;
  }
  return letter;
}

bool is_param_array_type(const TypeRef &t) {
  std::string base = t.base;
  if (base.rfind("struct ", 0) == 0)
    base = base.substr(7);
  return base == "TEE_Param" && (t.pointers > 0 || t.is_array());
}

std::optional<long long> const_dim(const Expr *e) {
  if (!e)
    return std::nullopt;
  const Expr &s = strip_casts(*e);
  if (s.kind == ExprKind::IntLit)
    return eval_constant(s.text);
  if (s.kind == ExprKind::Ident && all_caps(s.text))
    return 1;
  if (s.kind == ExprKind::Binary)
    return eval_constant(render(s));
  return std::nullopt;
}

struct LocalType {
  bool array = false;
  bool fixed = false;
  int pointers = 0;
};

struct FnInfo {
  Cfg cfg;
  std::map<const Stmt *, std::vector<const Stmt *>> enclosing_fors;
  std::map<std::string, LocalType> locals;
  std::set<std::pair<int, int>> back_edges;
};

std::unique_ptr<FnInfo> make_fn_info(const FunctionDef &fn) {
  auto fi = std::make_unique<FnInfo>();
  fi->cfg = build_cfg(fn);
  for (const auto &e : fi->cfg.back_edges())
    fi->back_edges.insert(e);
  for (const auto &p : fn.params)
    fi->locals[p.name] = {false, false, p.type.pointers + (p.type.is_array() ? 1 : 0)};
  std::vector<const Stmt *> stack;
  std::function<void(const Stmt *)> visit = [&](const Stmt *s) {
    if (!s)
      return;
    fi->enclosing_fors[s] = stack;
    for (const auto &d : s->decls) {
      LocalType t;
      t.array = d.type.is_array();
      t.fixed = t.array && const_dim(d.type.dims[0].get()).has_value();
      t.pointers = d.type.pointers;
      fi->locals[d.name] = t;
    }
    for (const auto &b : s->body)
      visit(b.get());
    visit(s->init.get());
    if (s->kind == StmtKind::For) {
      stack.push_back(s);
      visit(s->then_s.get());
      stack.pop_back();
    } else {
      visit(s->then_s.get());
    }
    visit(s->else_s.get());
  };
  visit(fn.body.get());
  return fi;
}

// Induction variable of a for-loop, if its condition compares it.
std::string induction_var(const Stmt &loop) {
  std::string var;
  if (loop.init) {
    if (loop.init->kind == StmtKind::Decl && loop.init->decls.size() == 1)
      var = loop.init->decls[0].name;
    else if (loop.init->expr && loop.init->expr->kind == ExprKind::Assign) {
      const Expr &l = strip_casts(loop.init->expr->kid(0));
      if (l.kind == ExprKind::Ident)
        var = l.text;
    }
  }
  if (var.empty() && loop.step) {
    const Expr &st = strip_casts(*loop.step);
    if ((st.kind == ExprKind::Postfix || st.kind == ExprKind::Unary ||
         st.kind == ExprKind::Assign) &&
        !st.kids.empty()) {
      const Expr &v = strip_casts(st.kid(0));
      if (v.kind == ExprKind::Ident)
        var = v.text;
    }
  }
  if (var.empty() || !loop.expr)
    return {};
  const Expr &c = strip_casts(*loop.expr);
  if (c.kind != ExprKind::Binary ||
      (c.text != "<" && c.text != "<=" && c.text != ">" && c.text != ">=" && c.text != "!="))
    return {};
  for (size_t i = 0; i < 2; ++i) {
    const Expr &side = strip_casts(c.kid(i));
    if (side.kind == ExprKind::Ident && side.text == var)
      return var;
  }
  return {};
}

struct Ctx {
  const FunctionDef *fn = nullptr;
  const Ast *ast = nullptr;
  FnInfo *info = nullptr;
  std::string params_name;
  int parent = -1;
  CfgPos call_pos;
  SourceLocation call_loc;
  /// Parameters whose buffer reached this callee through a raw pointer.
  std::set<int> pointer_alias;
  std::map<std::string, ValInfo> formals;
  std::map<const Stmt *, int> for_cond;
  std::vector<int> returns;
};

using DefState = std::map<std::string, std::set<int>>;

class Engine {
public:
  Engine(const std::vector<const Ast *> &asts, const ApiCatalog &catalog,
         const FlowOptions &options, std::set<std::string> root_names)
      : catalog_(catalog), options_(options), root_names_(std::move(root_names)) {
    std::vector<const Ast *> sorted(asts.begin(), asts.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const Ast *a, const Ast *b) { return a->path < b->path; });
    for (const Ast *ast : sorted) {
      if (ast->kind == UnitKind::CA)
        continue;
      for (const auto &f : ast->functions)
        if (f.body)
          functions_.emplace(f.name, std::make_pair(&f, ast));
    }
  }

  void run(const ParamRoot &root) {
    Ctx c;
    c.fn = root.fn;
    c.ast = root.ast;
    c.params_name = root.params_name;
    ctxs_.push_back(std::move(c));
    analyze(0);
  }

  std::vector<Op> ops;
  std::deque<Ctx> ctxs_;
  std::map<const FunctionDef *, std::unique_ptr<FnInfo>> fn_infos_;

private:
  FnInfo *fn_info(const FunctionDef *fn) {
    auto &slot = fn_infos_[fn];
    if (!slot)
      slot = make_fn_info(*fn);
    return slot.get();
  }

  void analyze(int c) {
    ctxs_[static_cast<size_t>(c)].info = fn_info(ctxs_[static_cast<size_t>(c)].fn);
    FnInfo *fi = ctxs_[static_cast<size_t>(c)].info;
    const Cfg &cfg = fi->cfg;
    std::vector<std::optional<DefState>> out(cfg.blocks.size());
    int cur_block = -1;
    DefState state;
    int saved_ctx = ctx_;
    DefState *saved_state = state_;
    ctx_ = c;
    state_ = &state;
    for (const auto &[pos, elem] : cfg.ordered_elements()) {
      if (pos.block != cur_block) {
        if (cur_block >= 0)
          out[static_cast<size_t>(cur_block)] = state;
        cur_block = pos.block;
        state.clear();
        for (int p : cfg.blocks[static_cast<size_t>(cur_block)].preds) {
          if (fi->back_edges.count({p, cur_block}) || !out[static_cast<size_t>(p)])
            continue;
          for (const auto &[sym, defs] : *out[static_cast<size_t>(p)])
            state[sym].insert(defs.begin(), defs.end());
        }
      }
      process(pos, *elem);
    }
    ctx_ = saved_ctx;
    state_ = saved_state;
  }

  Ctx &ctx() { return ctxs_[static_cast<size_t>(ctx_)]; }

  void process(CfgPos pos, const CfgElement &elem) {
    pos_ = pos;
    stmt_ = elem.stmt;
    report_loc_ = elem.stmt ? elem.stmt->loc : elem.loc;
    switch (elem.kind) {
    case CfgElement::Kind::Condition: {
      ValInfo info = eval(*elem.expr);
      int op = new_op(OpKind::CondExpr, elem.expr->loc, *elem.expr);
      ops[static_cast<size_t>(op)].operands.push_back({Role::Cond, std::move(info)});
      if (elem.stmt && elem.stmt->kind == StmtKind::For)
        ctx().for_cond[elem.stmt] = op;
      return;
    }
    case CfgElement::Kind::Step:
      eval(*elem.expr);
      return;
    case CfgElement::Kind::Statement:
      break;
    }
    const Stmt &s = *elem.stmt;
    switch (s.kind) {
    case StmtKind::Expr:
      if (s.expr)
        eval(*s.expr);
      return;
    case StmtKind::Decl:
      for (const auto &d : s.decls) {
        if (!d.init) {
          (*state_)[d.name].clear();
          continue;
        }
        ValInfo info = eval(*d.init);
        int op = new_op(OpKind::Assign, d.loc, *d.init);
        Op &o = ops[static_cast<size_t>(op)];
        o.symbol = d.name;
        o.text = d.name + " = " + o.text;
        o.result_alias = info.alias;
        o.result_length_like = info.length_like;
        o.operands.push_back({Role::Value, std::move(info)});
        (*state_)[d.name] = {op};
      }
      return;
    case StmtKind::Return:
      if (s.expr) {
        ValInfo info = eval(*s.expr);
        int op = new_op(OpKind::Return, s.loc, *s.expr);
        ops[static_cast<size_t>(op)].operands.push_back({Role::Value, std::move(info)});
        ctx().returns.push_back(op);
      }
      return;
    default:
      return;
    }
  }

  int new_op(OpKind kind, const SourceLocation &loc, const Expr &e) {
    Op o;
    o.id = static_cast<int>(ops.size());
    o.kind = kind;
    o.ctx = ctx_;
    o.pos = pos_;
    o.loc = report_loc_;
    o.op_loc = loc;
    o.function = ctx().fn->name;
    o.text = render(e);
    if (o.text.size() > 96)
      o.text = o.text.substr(0, 93) + "...";
    ops.push_back(std::move(o));
    return ops.back().id;
  }

  // ---- expression evaluation ----------------------------------------------

  ValInfo read_ident(const std::string &name) {
    ValInfo v;
    if (name == ctx().params_name) {
      v.is_params_array = true;
      return v;
    }
    auto it = state_->find(name);
    if (it != state_->end()) {
      if (it->second.empty()) {
        v.free = true;
        return v;
      }
      v.deps = it->second;
      v.length_like = true;
      for (int d : it->second) {
        const Op &o = ops[static_cast<size_t>(d)];
        v.alias.insert(o.result_alias.begin(), o.result_alias.end());
        v.length_like = v.length_like && o.result_length_like;
      }
      return v;
    }
    auto f = ctx().formals.find(name);
    if (f != ctx().formals.end())
      return f->second;
    if (all_caps(name) || functions_.count(name) || catalog_.classify(name) != CatalogClass::None) {
      v.literal_only = true;
      return v;
    }
    v.free = true;
    return v;
  }

  std::string root_ident(const Expr &e) {
    const Expr *cur = &strip_casts(e);
    while (true) {
      if (cur->kind == ExprKind::Ident)
        return cur->text == ctx().params_name ? std::string{} : cur->text;
      if ((cur->kind == ExprKind::Member || cur->kind == ExprKind::Index ||
           cur->kind == ExprKind::Unary || cur->kind == ExprKind::Postfix) &&
          !cur->kids.empty())
        cur = &strip_casts(cur->kid(0));
      else
        return {};
    }
  }

  void define(const std::string &sym, int op, bool strong) {
    if (sym.empty())
      return;
    if (strong)
      (*state_)[sym] = {op};
    else
      (*state_)[sym].insert(op);
  }

  ValInfo eval(const Expr &e) {
    switch (e.kind) {
    case ExprKind::IntLit:
    case ExprKind::FloatLit:
    case ExprKind::CharLit:
    case ExprKind::StrLit: {
      ValInfo v;
      v.literal_only = true;
      return v;
    }
    case ExprKind::Ident:
      return read_ident(e.text);
    case ExprKind::Member: {
      if (!ctx().params_name.empty()) {
        if (auto pr = match_param_ref(e, ctx().params_name)) {
          ValInfo v;
          v.params.insert({pr->index, pr->field});
          if (pr->field == "buffer")
            v.alias.insert(pr->index);
          v.length_like = pr->field == "size";
          return v;
        }
      }
      ValInfo v = eval(e.kid(0));
      v.length_like = e.text == "size";
      v.is_params_array = false;
      return v;
    }
    case ExprKind::Index: {
      if (!ctx().params_name.empty())
        if (auto pr = match_param_ref(e, ctx().params_name)) {
          ValInfo v;
          v.params.insert({pr->index, pr->field});
          return v;
        }
      return access(e, false);
    }
    case ExprKind::Unary: {
      if (e.text == "*")
        return access(e, false);
      if (e.text == "&") {
        const Expr &k = strip_casts(e.kid(0));
        if (k.kind == ExprKind::Index && !match_param_ref(k, ctx().params_name)) {
          ValInfo b = eval(k.kid(0));
          ValInfo i = eval(k.kid(1));
          ValInfo v = combine({b, i}, false);
          v.alias = b.alias;
          return v;
        }
        ValInfo v = eval(e.kid(0));
        v.length_like = false;
        return v;
      }
      if (e.text == "++" || e.text == "--")
        return update(e.kid(0), e);
      ValInfo v = eval(e.kid(0));
      v.alias.clear();
      v.length_like = false;
      return v;
    }
    case ExprKind::Postfix:
      return update(e.kid(0), e);
    case ExprKind::Binary: {
      ValInfo a = eval(e.kid(0));
      ValInfo b = eval(e.kid(1));
      bool arith = e.text == "+" || e.text == "-";
      return combine({a, b}, arith);
    }
    case ExprKind::Assign:
      return assign(e);
    case ExprKind::Cond: {
      std::vector<ValInfo> parts;
      for (const auto &k : e.kids)
        if (k)
          parts.push_back(eval(*k));
      ValInfo v = combine(parts, true);
      return v;
    }
    case ExprKind::Cast:
      return e.kids.empty() ? ValInfo{} : eval(e.kid(0));
    case ExprKind::Sizeof: {
      ValInfo v;
      v.literal_only = true;
      v.length_like = true;
      return v;
    }
    case ExprKind::Comma:
      eval(e.kid(0));
      return eval(e.kid(1));
    case ExprKind::InitList: {
      std::vector<ValInfo> parts;
      for (const auto &k : e.kids)
        if (k)
          parts.push_back(eval(*k));
      return combine(parts, false);
    }
    case ExprKind::Designator:
      return e.kids.empty() ? ValInfo{} : eval(e.kid(0));
    case ExprKind::Call:
      return call(e);
    }
    return {};
  }

  // Array subscript or dereference. Returns the element value.
  ValInfo access(const Expr &e, bool write) {
    int op = access_op(e, write);
    ValInfo v;
    v.deps.insert(op);
    return v;
  }

  int access_op(const Expr &e, bool write) {
    std::vector<Operand> operands;
    const Expr *index_expr = nullptr;
    const Expr *base_expr = &e.kid(0);
    operands.push_back({Role::Base, eval(e.kid(0))});
    if (e.kind == ExprKind::Index) {
      index_expr = &e.kid(1);
      operands.push_back({Role::Index, eval(e.kid(1))});
    }
    int op = new_op(OpKind::ArrayAccess, e.loc, e);
    Op &o = ops[static_cast<size_t>(op)];
    o.operands = std::move(operands);
    o.symbol = root_ident(*base_expr);
    o.write_access = write;
    if (write && index_expr)
      o.loop_cond = loop_fact(*base_expr, *index_expr);
    return op;
  }

  int loop_fact(const Expr &base, const Expr &index) {
    const Expr &b = strip_casts(base);
    const Expr &i = strip_casts(index);
    if (b.kind != ExprKind::Ident || i.kind != ExprKind::Ident || !stmt_)
      return -1;
    FnInfo *fi = ctx().info;
    auto lt = fi->locals.find(b.text);
    if (lt == fi->locals.end() || !lt->second.fixed)
      return -1;
    auto loops = fi->enclosing_fors.find(stmt_);
    if (loops == fi->enclosing_fors.end())
      return -1;
    for (auto it = loops->second.rbegin(); it != loops->second.rend(); ++it) {
      if (induction_var(**it) != i.text)
        continue;
      auto c = ctx().for_cond.find(*it);
      return c == ctx().for_cond.end() ? -1 : c->second;
    }
    return -1;
  }

  struct Target {
    std::string sym;
    bool strong = false;
    std::optional<FieldRead> param;
    std::set<int> through_alias;
  };

  Target lvalue(const Expr &lhs_raw, bool plain) {
    Target t;
    const Expr &lhs = strip_casts(lhs_raw);
    if (!ctx().params_name.empty())
      if (auto pr = match_param_ref(lhs, ctx().params_name)) {
        t.param = FieldRead{pr->index, pr->field};
        return t;
      }
    if (lhs.kind == ExprKind::Ident) {
      t.sym = lhs.text == ctx().params_name ? "" : lhs.text;
      t.strong = plain;
      return t;
    }
    if (lhs.kind == ExprKind::Index || (lhs.kind == ExprKind::Unary && lhs.text == "*")) {
      int op = access_op(lhs, true);
      const Op &o = ops[static_cast<size_t>(op)];
      t.through_alias = o.operands[0].info.alias;
      t.sym = root_ident(lhs);
      return t;
    }
    if (lhs.kind == ExprKind::Member) {
      ValInfo base = eval(lhs.kid(0));
      t.through_alias = base.alias;
      t.sym = root_ident(lhs);
      return t;
    }
    t.sym = root_ident(lhs);
    return t;
  }

  ValInfo assign(const Expr &e) {
    bool plain = e.text == "=";
    ValInfo rhs = eval(e.kid(1));
    std::vector<Operand> operands{{Role::Value, rhs}};
    const Expr &lhs = strip_casts(e.kid(0));
    if (!plain && lhs.kind == ExprKind::Ident)
      operands.push_back({Role::Value, read_ident(lhs.text)});
    Target t = lvalue(e.kid(0), plain);
    int op = new_op(OpKind::Assign, e.loc, e);
    Op &o = ops[static_cast<size_t>(op)];
    o.operands = std::move(operands);
    o.symbol = t.param ? render(lhs) : t.sym;
    o.writes_param = t.param;
    o.writes_alias = t.through_alias;
    o.result_alias = plain ? rhs.alias : std::set<int>{};
    if (!plain && o.operands.size() > 1)
      o.result_alias = o.operands[1].info.alias;
    o.result_length_like = plain && rhs.length_like;
    define(t.sym, op, t.strong);
    ValInfo v;
    v.deps.insert(op);
    v.alias = o.result_alias;
    return v;
  }

  ValInfo update(const Expr &target, const Expr &whole) {
    const Expr &lhs = strip_casts(target);
    ValInfo old = lhs.kind == ExprKind::Ident ? read_ident(lhs.text) : eval(target);
    Target t = lvalue(target, false);
    int op = new_op(OpKind::Assign, whole.loc, whole);
    Op &o = ops[static_cast<size_t>(op)];
    o.operands.push_back({Role::Value, old});
    o.symbol = t.param ? render(lhs) : t.sym;
    o.writes_param = t.param;
    o.writes_alias = t.through_alias;
    o.result_alias = old.alias;
    // x++ redefines x from itself: a strong definition.
    define(t.sym, op, lhs.kind == ExprKind::Ident);
    ValInfo v;
    v.deps.insert(op);
    v.alias = old.alias;
    return v;
  }

  Role arg_role(CatalogClass cls, const std::string &name, size_t i, size_t n,
                bool has_variadic) {
    const int idx = static_cast<int>(i);
    switch (cls) {
    case CatalogClass::Copy: {
      const CopySig &s = catalog_.copy_fns.at(name);
      if (idx == s.dest)
        return Role::Dest;
      if (idx == s.src)
        return Role::Src;
      if (idx == s.len)
        return Role::Len;
      return Role::Arg;
    }
    case CatalogClass::Fmt: {
      const FmtSig &s = catalog_.fmt_fns.at(name);
      if (idx == s.dest)
        return Role::Dest;
      if (idx == s.len)
        return Role::Len;
      if (idx >= s.first_variadic)
        return Role::Variadic;
      if (idx == s.first_variadic - 1)
        return Role::Format;
      (void)has_variadic;
      return Role::Arg;
    }
    case CatalogClass::Alloc:
      return idx == catalog_.alloc_fns.at(name) ? Role::Len : Role::Arg;
    case CatalogClass::Enc:
      if (n >= 3 && i == 0)
        return Role::Arg;
      if (n >= 3 && i + 2 >= n)
        return Role::Dest;
      return Role::Src;
    case CatalogClass::Cmp:
    case CatalogClass::None:
      return Role::Arg;
    }
    return Role::Arg;
  }

  ValInfo call(const Expr &e) {
    std::string name = callee_name(e);
    CatalogClass cls = catalog_.classify(name);
    const size_t n = e.kids.size() - 1;
    if (name.empty())
      eval(e.kid(0));
    std::vector<ValInfo> infos;
    for (size_t i = 1; i < e.kids.size(); ++i)
      infos.push_back(eval(e.kid(i)));
    bool has_variadic = false;
    if (cls == CatalogClass::Fmt)
      has_variadic = static_cast<int>(n) > catalog_.fmt_fns.at(name).first_variadic;

    int op = new_op(OpKind::Call, e.loc, e);
    {
      Op &o = ops[static_cast<size_t>(op)];
      o.cls = cls;
      o.symbol = name.empty() ? render(e.kid(0)) : name;
      for (size_t i = 0; i < n; ++i) {
        o.args.push_back(render(e.kid(i + 1)));
        o.operands.push_back({arg_role(cls, name, i, n, has_variadic), infos[i]});
      }
    }

    // Definitions made by the call.
    auto arg = [&](size_t i) -> const Expr & { return strip_casts(e.kid(i + 1)); };
    auto addr_target = [&](size_t i) -> std::string {
      const Expr &a = arg(i);
      if (a.kind == ExprKind::Unary && a.text == "&")
        return root_ident(a.kid(0));
      return {};
    };
    switch (cls) {
    case CatalogClass::Copy:
    case CatalogClass::Fmt: {
      int dest = cls == CatalogClass::Copy ? catalog_.copy_fns.at(name).dest
                                           : catalog_.fmt_fns.at(name).dest;
      if (dest >= 0 && static_cast<size_t>(dest) < n) {
        const Expr &d = arg(static_cast<size_t>(dest));
        ops[static_cast<size_t>(op)].result_alias = infos[static_cast<size_t>(dest)].alias;
        if (d.kind == ExprKind::Ident)
          define(root_ident(d), op, true);
        else if (std::string t = root_ident(d); !t.empty())
          define(t, op, false);
      }
      break;
    }
    case CatalogClass::Enc:
      for (size_t i = 0; i < n; ++i) {
        if (ops[static_cast<size_t>(op)].operands[i].role != Role::Dest)
          continue;
        const Expr &a = arg(i);
        if (a.kind == ExprKind::Ident)
          define(a.text == ctx().params_name ? "" : a.text, op, true);
        else if (std::string t = addr_target(i); !t.empty())
          define(t, op, true);
        else
          define(root_ident(a), op, false);
      }
      break;
    case CatalogClass::Cmp:
    case CatalogClass::Alloc:
      break;
    case CatalogClass::None:
      for (size_t i = 0; i < n; ++i) {
        if (std::string t = addr_target(i); !t.empty()) {
          define(t, op, false);
          continue;
        }
        const Expr &a = arg(i);
        if (a.kind != ExprKind::Ident)
          continue;
        auto lt = ctx().info->locals.find(a.text);
        if (lt != ctx().info->locals.end() && (lt->second.array || lt->second.pointers > 0))
          define(a.text, op, false);
      }
      break;
    }

    // One level of call summaries for functions defined in the TA code.
    if (cls == CatalogClass::None && ctx().parent < 0 && !root_names_.count(name)) {
      auto it = functions_.find(name);
      if (it != functions_.end() && it->second.first != ctx().fn)
        inline_call(op, *it->second.first, *it->second.second, infos);
    }

    ValInfo v;
    v.deps.insert(op);
    v.length_like = name == "strlen" || name == "strnlen";
    return v;
  }

  void inline_call(int op, const FunctionDef &fn, const Ast &ast,
                   const std::vector<ValInfo> &infos) {
    Ctx child;
    child.fn = &fn;
    child.ast = &ast;
    child.parent = ctx_;
    child.call_pos = pos_;
    child.call_loc = report_loc_;
    for (size_t i = 0; i < fn.params.size() && i < infos.size(); ++i) {
      const Decl &formal = fn.params[i];
      if (formal.name.empty())
        continue;
      if (is_param_array_type(formal.type)) {
        if (infos[i].is_params_array)
          child.params_name = formal.name;
        continue;
      }
      ValInfo v = infos[i];
      v.is_params_array = false;
      bool raw_pointer = formal.type.pointers > 0 || formal.type.is_array();
      if (raw_pointer && !v.alias.empty()) {
        if (options_.deep_pointers)
          child.pointer_alias.insert(v.alias.begin(), v.alias.end());
        else
          v.alias.clear();
      }
      child.formals[formal.name] = std::move(v);
    }
    ctxs_.push_back(std::move(child));
    int c = static_cast<int>(ctxs_.size()) - 1;
    CfgPos saved_pos = pos_;
    const Stmt *saved_stmt = stmt_;
    SourceLocation saved_loc = report_loc_;
    analyze(c);
    pos_ = saved_pos;
    stmt_ = saved_stmt;
    report_loc_ = saved_loc;
    ValInfo ret;
    for (int r : ctxs_[static_cast<size_t>(c)].returns)
      ret.deps.insert(r);
    if (!ret.deps.empty())
      ops[static_cast<size_t>(op)].operands.push_back({Role::Returned, std::move(ret)});
  }

  const ApiCatalog &catalog_;
  FlowOptions options_;
  std::set<std::string> root_names_;
  std::map<std::string, std::pair<const FunctionDef *, const Ast *>> functions_;

  int ctx_ = 0;
  DefState *state_ = nullptr;
  CfgPos pos_;
  const Stmt *stmt_ = nullptr;
  SourceLocation report_loc_;
};

// ---- views --------------------------------------------------------------

// Operand roles through which data flows into an operation's result.
bool carries(const Op &op, Role r, bool input_view) {
  switch (op.kind) {
  case OpKind::Assign:
  case OpKind::Return:
    return r == Role::Value;
  case OpKind::ArrayAccess:
    return r == Role::Base || (input_view && r == Role::Index);
  case OpKind::CondExpr:
  case OpKind::MemberRead:
    return false;
  case OpKind::Call:
    break;
  }
  switch (op.cls) {
  case CatalogClass::Copy:
  case CatalogClass::Enc:
    return r == Role::Src;
  case CatalogClass::Fmt: {
    if (r == Role::Variadic)
      return true;
    if (r != Role::Format)
      return false;
    for (const auto &o : op.operands)
      if (o.role == Role::Variadic)
        return false;
    return true;
  }
  case CatalogClass::Alloc:
    return false;
  case CatalogClass::Cmp:
    return r == Role::Arg;
  case CatalogClass::None:
    return r == Role::Arg || r == Role::Returned;
  }
  return false;
}

struct Analysis {
  std::vector<Op> ops;
  std::deque<Ctx> ctxs;
  std::map<const FunctionDef *, std::unique_ptr<FnInfo>> fn_infos;
  std::vector<std::vector<std::pair<int, size_t>>> in; // (from, operand index)
  std::vector<std::vector<std::pair<int, size_t>>> out; // (to, operand index)

  void index_edges() {
    in.assign(ops.size(), {});
    out.assign(ops.size(), {});
    for (const auto &o : ops) {
      for (size_t k = 0; k < o.operands.size(); ++k) {
        for (int d : o.operands[k].info.deps) {
          in[static_cast<size_t>(o.id)].emplace_back(d, k);
          out[static_cast<size_t>(d)].emplace_back(o.id, k);
        }
      }
    }
  }
};

bool reads_param(const ValInfo &v, int k) {
  for (const auto &[idx, field] : v.params)
    if (idx == k)
      return true;
  return false;
}

bool writes_matching_field(const Op &o, const ParamBinding &b) {
  if (!o.writes_param || o.writes_param->first != b.index)
    return false;
  const std::string &f = o.writes_param->second;
  if (b.kind == ParamKind::Value)
    return f == "a" || f == "b";
  return f == "buffer" || f == "size";
}

struct Selection {
  std::vector<int> ids;
  std::map<int, FlowNode> facts;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> sources;
};

FlowNode base_node(const Op &o) {
  FlowNode n;
  n.loc = o.loc;
  n.op_loc = o.op_loc;
  n.op = o.kind;
  n.cls = o.cls;
  n.symbol = o.symbol;
  n.function = o.function;
  n.text = o.text;
  n.args = o.args;
  return n;
}

Selection output_view(const Analysis &a, const ParamBinding &b) {
  Selection sel;
  std::set<int> sinks;
  for (const auto &o : a.ops) {
    bool sink = writes_matching_field(o, b);
    if (b.kind != ParamKind::Value) {
      if (o.kind == OpKind::Assign && o.writes_alias.count(b.index))
        sink = true;
      if (o.kind == OpKind::Call &&
          (o.cls == CatalogClass::Copy || o.cls == CatalogClass::Fmt)) {
        for (const auto &op : o.operands)
          if (op.role == Role::Dest && op.info.alias.count(b.index))
            sink = true;
      }
    }
    if (sink)
      sinks.insert(o.id);
  }
  std::set<int> slice(sinks.begin(), sinks.end());
  std::vector<int> work(sinks.begin(), sinks.end());
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    const Op &o = a.ops[static_cast<size_t>(x)];
    for (const auto &[from, k] : a.in[static_cast<size_t>(x)]) {
      if (!carries(o, o.operands[k].role, false))
        continue;
      if (slice.insert(from).second)
        work.push_back(from);
    }
  }

  // Origin kinds reaching each node: literal, free, parameter, opaque.
  enum : unsigned { kLit = 1, kFree = 2, kParam = 4, kOpaque = 8 };
  std::map<int, unsigned> memo;
  std::function<unsigned(int)> kinds = [&](int x) -> unsigned {
    auto it = memo.find(x);
    if (it != memo.end())
      return it->second;
    memo[x] = 0;
    const Op &o = a.ops[static_cast<size_t>(x)];
    unsigned k = 0;
    bool any = false;
    for (const auto &op : o.operands) {
      if (!carries(o, op.role, false))
        continue;
      any = true;
      if (op.info.literal_only)
        k |= kLit;
      if (op.info.free)
        k |= kFree;
      if (!op.info.params.empty())
        k |= kParam;
      for (int d : op.info.deps)
        k |= kinds(d);
    }
    if (!any)
      k |= kOpaque;
    memo[x] = k;
    return k;
  };

  for (int x : slice) {
    const Op &o = a.ops[static_cast<size_t>(x)];
    FlowNode n = base_node(o);
    bool any = false;
    bool introduces = false;
    bool all_length = true;
    for (const auto &op : o.operands) {
      if (!carries(o, op.role, false))
        continue;
      any = true;
      if (op.info.literal_only || op.info.free || !op.info.params.empty())
        introduces = true;
      all_length = all_length && op.info.length_like;
    }
    n.origin = introduces || !any;
    n.sink = sinks.count(x) > 0;
    if (n.sink) {
      n.length_value = any && all_length;
      n.param_value = kinds(x) == kParam;
    }
    if (n.origin)
      sel.sources.push_back(x);
    sel.facts.emplace(x, std::move(n));
    for (const auto &[from, k] : a.in[static_cast<size_t>(x)])
      if (slice.count(from) && carries(o, o.operands[k].role, false))
        sel.edges.emplace_back(from, x);
  }
  sel.ids.assign(slice.begin(), slice.end());
  return sel;
}

bool strictly_dominates(const Analysis &a, const Op &g, const Op &s) {
  if (g.ctx == s.ctx) {
    if (g.pos.block == s.pos.block && g.pos.index == s.pos.index)
      return false;
    return a.ctxs[static_cast<size_t>(g.ctx)].info->cfg.dominates(g.pos, s.pos);
  }
  const Ctx &sc = a.ctxs[static_cast<size_t>(s.ctx)];
  if (sc.parent != g.ctx)
    return false;
  if (g.pos.block == sc.call_pos.block && g.pos.index == sc.call_pos.index)
    return false;
  return a.ctxs[static_cast<size_t>(g.ctx)].info->cfg.dominates(g.pos, sc.call_pos);
}

Selection input_view(const Analysis &a, const ParamBinding &b) {
  Selection sel;
  const int k = b.index;
  std::set<int> direct;
  std::vector<char> tainted(a.ops.size(), 0);
  std::vector<int> work;
  for (const auto &o : a.ops) {
    bool d = false;
    bool t = false;
    for (const auto &op : o.operands) {
      if (reads_param(op.info, k)) {
        d = true;
        if (carries(o, op.role, true))
          t = true;
      }
    }
    if (d)
      direct.insert(o.id);
    if (t) {
      tainted[static_cast<size_t>(o.id)] = 1;
      work.push_back(o.id);
    }
  }
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    for (const auto &[to, idx] : a.out[static_cast<size_t>(x)]) {
      const Op &o = a.ops[static_cast<size_t>(to)];
      if (tainted[static_cast<size_t>(to)] || !carries(o, o.operands[idx].role, true))
        continue;
      tainted[static_cast<size_t>(to)] = 1;
      work.push_back(to);
    }
  }
  auto derived = [&](const ValInfo &v) {
    if (reads_param(v, k))
      return true;
    for (int d : v.deps)
      if (tainted[static_cast<size_t>(d)])
        return true;
    return false;
  };

  std::set<int> nodes;
  std::set<int> sinks;
  std::vector<int> guards;
  for (const auto &o : a.ops) {
    bool uses = false;
    for (const auto &op : o.operands)
      uses = uses || derived(op.info);
    if (!uses)
      continue;
    nodes.insert(o.id);
    bool sink = false;
    if (o.kind == OpKind::ArrayAccess) {
      for (const auto &op : o.operands) {
        if (op.role == Role::Index && derived(op.info))
          sink = true;
        if (op.role == Role::Base && op.info.alias.count(k))
          sink = true;
      }
    } else if (o.kind == OpKind::Call && o.cls == CatalogClass::Copy) {
      for (const auto &op : o.operands) {
        if ((op.role == Role::Src || op.role == Role::Len) && derived(op.info))
          sink = true;
        if (op.role == Role::Dest && op.info.alias.count(k))
          sink = true;
      }
    } else if (o.kind == OpKind::CondExpr) {
      guards.push_back(o.id);
    }
    if (sink)
      sinks.insert(o.id);
  }
  std::set<int> guard_set(guards.begin(), guards.end());
  std::set<int> loop_writes;
  for (const auto &o : a.ops)
    if (o.kind == OpKind::ArrayAccess && o.loop_cond >= 0 && guard_set.count(o.loop_cond)) {
      loop_writes.insert(o.id);
      nodes.insert(o.id);
    }

  // Upstream parameter fields and free symbols of a value (through taint).
  std::map<int, std::pair<std::set<FieldRead>, bool>> memo;
  std::function<std::pair<std::set<FieldRead>, bool>(int)> upstream =
      [&](int x) -> std::pair<std::set<FieldRead>, bool> {
    auto it = memo.find(x);
    if (it != memo.end())
      return it->second;
    memo[x] = {};
    const Op &o = a.ops[static_cast<size_t>(x)];
    std::pair<std::set<FieldRead>, bool> r{{}, false};
    for (const auto &op : o.operands) {
      if (!carries(o, op.role, true))
        continue;
      r.first.insert(op.info.params.begin(), op.info.params.end());
      r.second = r.second || op.info.free;
      for (int d : op.info.deps) {
        auto u = upstream(d);
        r.first.insert(u.first.begin(), u.first.end());
        r.second = r.second || u.second;
      }
    }
    if (o.kind == OpKind::Call && o.cls == CatalogClass::None && o.operands.empty())
      r.second = true;
    memo[x] = r;
    return r;
  };
  auto value_upstream = [&](const ValInfo &v) {
    std::pair<std::set<FieldRead>, bool> r{v.params, v.free};
    for (int d : v.deps) {
      auto u = upstream(d);
      r.first.insert(u.first.begin(), u.first.end());
      r.second = r.second || u.second;
    }
    return r;
  };

  auto alloc_matched = [&](const Op &o) {
    std::vector<int> stack;
    for (const auto &op : o.operands)
      if (op.role == Role::Dest)
        stack.assign(op.info.deps.begin(), op.info.deps.end());
    std::set<int> seen;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (!seen.insert(x).second || seen.size() > 64)
        continue;
      const Op &d = a.ops[static_cast<size_t>(x)];
      if (d.kind == OpKind::Call && d.cls == CatalogClass::Alloc) {
        for (const auto &op : d.operands)
          if (derived(op.info))
            return true;
        continue;
      }
      if (d.kind == OpKind::Assign)
        for (const auto &op : d.operands)
          stack.insert(stack.end(), op.info.deps.begin(), op.info.deps.end());
    }
    return false;
  };

  for (int x : nodes) {
    const Op &o = a.ops[static_cast<size_t>(x)];
    FlowNode n = base_node(o);
    n.origin = direct.count(x) > 0;
    n.sink = sinks.count(x) > 0;
    n.guard = guard_set.count(x) > 0;
    if (n.sink || loop_writes.count(x)) {
      for (int g : guards)
        if (g != x && strictly_dominates(a, a.ops[static_cast<size_t>(g)], o))
          n.guarded_by.push_back(g);
    }
    if (loop_writes.count(x))
      n.loop_cond = o.loop_cond;
    if (n.sink && o.kind == OpKind::Call)
      n.alloc_matched = alloc_matched(o);
    if (n.sink && o.kind == OpKind::ArrayAccess) {
      bool own_base = false;
      const ValInfo *index = nullptr;
      for (const auto &op : o.operands) {
        if (op.role == Role::Base && op.info.deps.empty() &&
            op.info.params == std::set<FieldRead>{{k, "buffer"}})
          own_base = true;
        if (op.role == Role::Index)
          index = &op.info;
      }
      if (own_base && index) {
        auto [fields, free] = value_upstream(*index);
        n.own_size_index = !free && fields == std::set<FieldRead>{{k, "size"}};
      }
    }
    if (n.origin)
      sel.sources.push_back(x);
    sel.facts.emplace(x, std::move(n));
    for (const auto &[from, idx] : a.in[static_cast<size_t>(x)])
      if (nodes.count(from))
        sel.edges.emplace_back(from, x);
  }
  sel.ids.assign(nodes.begin(), nodes.end());
  return sel;
}

Selection shared_view(const Analysis &a, const ParamBinding &b) {
  Selection sel;
  const int k = b.index;
  for (const auto &o : a.ops) {
    bool direct = false;
    bool alias_use = false;
    for (const auto &op : o.operands) {
      if (op.role == Role::Returned)
        continue;
      direct = direct || reads_param(op.info, k);
      alias_use = alias_use || op.info.alias.count(k) > 0;
    }
    if (!direct && !alias_use)
      continue;
    FlowNode n = base_node(o);
    n.origin = direct;
    if (o.kind == OpKind::Assign && !o.operands.empty()) {
      const ValInfo &v = o.operands[0].info;
      if (v.alias.count(k))
        n.isc = IscKind::ShallowCopy;
      else if (v.params.count({k, "size"}))
        n.isc = IscKind::SizeRead;
    } else if (o.kind == OpKind::Call && alias_use) {
      n.isc = IscKind::DirectUse;
    } else if (o.kind == OpKind::ArrayAccess && !o.operands.empty() &&
               o.operands[0].info.alias.count(k)) {
      n.isc = IscKind::DirectUse;
    }
    if (n.origin)
      sel.sources.push_back(o.id);
    sel.ids.push_back(o.id);
    sel.facts.emplace(o.id, std::move(n));
  }
  std::set<int> nodes(sel.ids.begin(), sel.ids.end());
  for (int x : sel.ids)
    for (const auto &[from, idx] : a.in[static_cast<size_t>(x)])
      if (nodes.count(from))
        sel.edges.emplace_back(from, x);
  return sel;
}

FlowGraph assemble(const Analysis &a, const ParamBinding &b, View view, Selection sel) {
  std::vector<int> order = sel.ids;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const Op &ox = a.ops[static_cast<size_t>(x)];
    const Op &oy = a.ops[static_cast<size_t>(y)];
    return std::tie(ox.op_loc.file, ox.op_loc.line, ox.op_loc.column, x) <
           std::tie(oy.op_loc.file, oy.op_loc.line, oy.op_loc.column, y);
  });
  std::map<int, int> renum;
  for (size_t i = 0; i < order.size(); ++i)
    renum[order[i]] = static_cast<int>(i);
  FlowGraph g;
  g.binding = b;
  g.view = view;
  for (int x : order) {
    FlowNode n = std::move(sel.facts.at(x));
    n.id = renum.at(x);
    std::vector<int> guards;
    for (int gd : n.guarded_by)
      if (renum.count(gd))
        guards.push_back(renum.at(gd));
    std::sort(guards.begin(), guards.end());
    n.guarded_by = guards;
    n.loop_cond = n.loop_cond >= 0 && renum.count(n.loop_cond) ? renum.at(n.loop_cond) : -1;
    g.nodes.push_back(std::move(n));
  }
  for (const auto &[from, to] : sel.edges)
    g.edges.push_back({renum.at(from), renum.at(to)});
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  for (int s : sel.sources)
    g.entry_sources.push_back(renum.at(s));
  std::sort(g.entry_sources.begin(), g.entry_sources.end());
  for (auto &n : g.nodes)
    n.tags = derive_tags(g, n);
  return g;
}

std::set<std::string> root_names(const std::vector<const Ast *> &asts) {
  std::set<std::string> names;
  for (const auto &r : find_roots(asts))
    names.insert(r.fn->name);
  return names;
}

Analysis analyze_root(const ParamRoot &root, const std::vector<const Ast *> &asts,
                      const ApiCatalog &catalog, const FlowOptions &options,
                      const std::set<std::string> &roots) {
  std::set<std::string> others = roots;
  others.erase(root.fn->name);
  Engine engine(asts, catalog, options, std::move(others));
  engine.run(root);
  Analysis a;
  a.ops = std::move(engine.ops);
  a.ctxs = std::move(engine.ctxs_);
  a.fn_infos = std::move(engine.fn_infos_);
  // Writes through a raw pointer into a parameter buffer are reported where
  // the pointer was handed over.
  for (auto &o : a.ops) {
    const Ctx &c = a.ctxs[static_cast<size_t>(o.ctx)];
    if (c.pointer_alias.empty())
      continue;
    bool through = std::any_of(o.writes_alias.begin(), o.writes_alias.end(),
                               [&](int k) { return c.pointer_alias.count(k) > 0; });
    for (const auto &op : o.operands)
      if (op.role == Role::Dest)
        for (int k : op.info.alias)
          through = through || c.pointer_alias.count(k) > 0;
    if (through)
      o.loc = c.call_loc;
  }
  a.index_edges();
  return a;
}

FlowGraph view_graph(const Analysis &a, const ParamBinding &b, View view) {
  switch (view) {
  case View::Output:
    return assemble(a, b, view, output_view(a, b));
  case View::Input:
    return assemble(a, b, view, input_view(a, b));
  case View::Shared:
    return assemble(a, b, view, shared_view(a, b));
  }
  return {};
}

} // namespace

unsigned derive_tags(const FlowGraph &graph, const FlowNode &node) {
  unsigned t = 0;
  if (node.origin)
    t |= tag::Source;
  switch (graph.view) {
  case View::Output:
    if (node.sink)
      t |= tag::Sink | tag::CS;
    if (node.cls == CatalogClass::Enc)
      t |= tag::SC;
    break;
  case View::Input:
    if (node.sink)
      t |= tag::Sink | tag::CS;
    if (node.guard) {
      for (const auto &other : graph.nodes) {
        if (std::find(other.guarded_by.begin(), other.guarded_by.end(), node.id) !=
            other.guarded_by.end()) {
          t |= tag::SC;
          break;
        }
      }
    }
    break;
  case View::Shared:
    if (node.isc != IscKind::None)
      t |= tag::ISC;
    if (node.isc == IscKind::DirectUse)
      t |= tag::Sink;
    break;
  }
  return t;
}

std::vector<FlowGraph> build_root_flows(const ParamRoot &root,
                                        const std::vector<ParamBinding> &bindings,
                                        const std::vector<const Ast *> &asts,
                                        const ApiCatalog &catalog,
                                        const FlowOptions &options) {
  std::vector<FlowGraph> out;
  bool any = false;
  for (const auto &b : bindings)
    any = any || !views_for(b.role).empty();
  if (!any)
    return out;
  Analysis a = analyze_root(root, asts, catalog, options, root_names(asts));
  for (const auto &b : bindings)
    for (View v : views_for(b.role))
      out.push_back(view_graph(a, b, v));
  return out;
}

FlowGraph build_flow(const ParamBinding &binding, View view,
                     const std::vector<const Ast *> &asts, const ApiCatalog &catalog,
                     const FlowOptions &options) {
  auto roots = find_roots(asts);
  std::set<std::string> names;
  for (const auto &r : roots)
    names.insert(r.fn->name);
  for (const auto &r : roots) {
    if (r.fn->name != binding.entry_function || r.command != binding.command_id)
      continue;
    if (!binding.file.empty() && r.ast->path != binding.file)
      continue;
    Analysis a = analyze_root(r, asts, catalog, options, names);
    return view_graph(a, binding, view);
  }
  throw UnresolvedEntry("entry function not found: " + binding.entry_function);
}

bool reaches(const FlowGraph &graph, int from, int to) {
  const int n = static_cast<int>(graph.nodes.size());
  if (from < 0 || from >= n)
    throw UnknownNode("unknown flow node " + std::to_string(from));
  if (to < 0 || to >= n)
    throw UnknownNode("unknown flow node " + std::to_string(to));
  if (from == to)
    return true;
  auto succ = graph.successors();
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<int> stack{from};
  seen[static_cast<size_t>(from)] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : succ[static_cast<size_t>(x)]) {
      if (y == to)
        return true;
      if (!seen[static_cast<size_t>(y)]) {
        seen[static_cast<size_t>(y)] = 1;
        stack.push_back(y);
      }
    }
  }
  return false;
}

std::vector<std::pair<int, std::string>> variadic_expand(const FlowNode &call,
                                                         const ApiCatalog &catalog) {
  std::vector<std::pair<int, std::string>> out;
  if (call.cls != CatalogClass::Fmt)
    return out;
  auto it = catalog.fmt_fns.find(call.symbol);
  if (it == catalog.fmt_fns.end())
    return out;
  for (size_t i = static_cast<size_t>(std::max(0, it->second.first_variadic));
       i < call.args.size(); ++i)
    out.emplace_back(static_cast<int>(i), call.args[i]);
  return out;
}

std::string dump_flow(const FlowGraph &g) {
  std::ostringstream os;
  os << "graph " << g.binding.entry_function;
  if (g.binding.command_id)
    os << " [" << *g.binding.command_id << "]";
  os << " param " << g.binding.index << " " << to_string(g.binding.role) << " view "
     << to_string(g.view) << "\n";
  for (const auto &n : g.nodes) {
    os << "  n" << n.id << " " << tags_to_string(n.tags) << " " << to_string(n.op_loc)
       << " " << to_string(n.op);
    if (n.cls != CatalogClass::None)
      os << ":" << to_string(n.cls);
    if (!n.symbol.empty())
      os << " " << n.symbol;
    os << " | " << n.text << "\n";
  }
  for (const auto &e : g.edges)
    os << "  n" << e.from << " -> n" << e.to << "\n";
  return os.str();
}

} // namespace partcheck
