#include "partcheck/params.hpp"

#include "partcheck/parser.hpp"
#include "partcheck/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace partcheck {

const char *to_string(ParamRole r) {
  switch (r) {
  case ParamRole::Input:
    return "input";
  case ParamRole::Output:
    return "output";
  case ParamRole::InOut:
    return "inout";
  case ParamRole::SharedMemory:
    return "shared";
  case ParamRole::Unknown:
    return "unknown";
  }
  return "unknown";
}

const char *to_string(ParamKind k) {
  switch (k) {
  case ParamKind::None:
    return "none";
  case ParamKind::Value:
    return "value";
  case ParamKind::TempMemref:
    return "temp";
  case ParamKind::RegisteredMemref:
    return "registered";
  }
  return "none";
}

const char *to_string(Evidence e) {
  switch (e) {
  case Evidence::None:
    return "none";
  case Evidence::CaSide:
    return "ca";
  case Evidence::TaSide:
    return "ta";
  case Evidence::Annotation:
    return "annotation";
  }
  return "none";
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto &c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

} // namespace

std::optional<ParamRole> parse_role(std::string_view s) {
  std::string v = lower(s);
  if (v == "input" || v == "in")
    return ParamRole::Input;
  if (v == "output" || v == "out")
    return ParamRole::Output;
  if (v == "inout")
    return ParamRole::InOut;
  if (v == "shared" || v == "sharedmemory" || v == "shared_memory")
    return ParamRole::SharedMemory;
  if (v == "unknown")
    return ParamRole::Unknown;
  return std::nullopt;
}

std::optional<ParamKind> parse_kind(std::string_view s) {
  std::string v = lower(s);
  if (v == "value")
    return ParamKind::Value;
  if (v == "temp" || v == "tempmemref" || v == "temp_memref" || v == "memref")
    return ParamKind::TempMemref;
  if (v == "registered" || v == "registeredmemref" || v == "registered_memref")
    return ParamKind::RegisteredMemref;
  if (v == "none")
    return ParamKind::None;
  return std::nullopt;
}

std::pair<ParamRole, ParamKind> decode_param_type(unsigned nibble) {
  switch (nibble & 0xF) {
  case param_type::ValueInput:
    return {ParamRole::Input, ParamKind::Value};
  case param_type::ValueOutput:
    return {ParamRole::Output, ParamKind::Value};
  case param_type::ValueInout:
    return {ParamRole::InOut, ParamKind::Value};
  case param_type::MemrefInput:
    return {ParamRole::Input, ParamKind::TempMemref};
  case param_type::MemrefOutput:
    return {ParamRole::Output, ParamKind::TempMemref};
  case param_type::MemrefInout:
    return {ParamRole::InOut, ParamKind::TempMemref};
  case param_type::MemrefWhole:
  case param_type::MemrefPartialInput:
  case param_type::MemrefPartialOutput:
  case param_type::MemrefPartialInout:
    return {ParamRole::SharedMemory, ParamKind::RegisteredMemref};
  default:
    return {ParamRole::Unknown, ParamKind::None};
  }
}

namespace {

std::optional<long long> int_value(const Expr &e) {
  const Expr &s = strip_casts(e);
  if (s.kind == ExprKind::IntLit)
    return eval_constant(s.text);
  if (s.kind == ExprKind::Binary || s.kind == ExprKind::Unary)
    return eval_constant(render(s));
  return std::nullopt;
}

// `params[k]` with `params` named `name` and `k` constant.
std::optional<int> param_index(const Expr &e, std::string_view name) {
  const Expr &s = strip_casts(e);
  if (s.kind != ExprKind::Index || s.kids.size() < 2)
    return std::nullopt;
  const Expr &base = strip_casts(s.kid(0));
  if (base.kind != ExprKind::Ident || base.text != name)
    return std::nullopt;
  auto k = int_value(s.kid(1));
  if (!k || *k < 0 || *k > 3)
    return std::nullopt;
  return static_cast<int>(*k);
}

} // namespace

std::optional<ParamRef> match_param_ref(const Expr &e, std::string_view params_name) {
  const Expr &s = strip_casts(e);
  if (auto k = param_index(s, params_name))
    return ParamRef{*k, ""};
  if (s.kind != ExprKind::Member || s.arrow)
    return std::nullopt;
  const Expr &inner = strip_casts(s.kid(0));
  if (inner.kind == ExprKind::Member && !inner.arrow &&
      (inner.text == "memref" || inner.text == "value" || inner.text == "tmpref")) {
    if (auto k = param_index(inner.kid(0), params_name)) {
      bool ok = inner.text == "value" ? (s.text == "a" || s.text == "b")
                                      : (s.text == "buffer" || s.text == "size");
      if (ok)
        return ParamRef{*k, s.text};
    }
    return std::nullopt;
  }
  if (s.text == "memref" || s.text == "value" || s.text == "tmpref")
    if (auto k = param_index(inner, params_name))
      return ParamRef{*k, ""};
  return std::nullopt;
}

namespace {

// ---- generic statement traversal ----------------------------------------

void for_each_stmt(const Stmt *s, const std::function<void(const Stmt &)> &fn) {
  if (!s)
    return;
  fn(*s);
  for (const auto &b : s->body)
    for_each_stmt(b.get(), fn);
  for_each_stmt(s->init.get(), fn);
  for_each_stmt(s->then_s.get(), fn);
  for_each_stmt(s->else_s.get(), fn);
}

void for_each_expr(const Stmt &s, const std::function<void(const Expr &)> &fn) {
  if (s.expr)
    fn(*s.expr);
  if (s.step)
    fn(*s.step);
  for (const auto &d : s.decls)
    if (d.init)
      fn(*d.init);
}

void for_each_subexpr(const FunctionDef &f, const std::function<void(const Expr &)> &fn) {
  for_each_stmt(f.body.get(), [&](const Stmt &s) {
    for_each_expr(s, [&](const Expr &e) { walk(e, fn); });
  });
}

std::set<std::string> declared_names(const FunctionDef &f, const Ast &ast) {
  std::set<std::string> names;
  for (const auto &p : f.params)
    names.insert(p.name);
  for (const auto &g : ast.globals)
    names.insert(g.name);
  for_each_stmt(f.body.get(), [&](const Stmt &s) {
    for (const auto &d : s.decls)
      names.insert(d.name);
  });
  return names;
}

bool is_param_array_type(const TypeRef &t) {
  std::string base = t.base;
  if (base.rfind("struct ", 0) == 0)
    base = base.substr(7);
  return base == "TEE_Param" && (t.pointers > 0 || t.is_array());
}

bool is_ca_unit(const Ast &ast) { return ast.kind == UnitKind::CA; }

} // namespace

std::string params_name_of(const FunctionDef &fn, const Ast &ast) {
  for (const auto &p : fn.params)
    if (is_param_array_type(p.type))
      return p.name;
  if (!fn.body)
    return {};
  std::set<std::string> declared = declared_names(fn, ast);
  std::string found;
  for_each_subexpr(fn, [&](const Expr &e) {
    if (!found.empty() || e.kind != ExprKind::Member || e.arrow)
      return;
    if (e.text != "memref" && e.text != "value")
      return;
    const Expr &idx = strip_casts(e.kid(0));
    if (idx.kind != ExprKind::Index)
      return;
    const Expr &base = strip_casts(idx.kid(0));
    if (base.kind == ExprKind::Ident && !declared.count(base.text) &&
        param_index(idx, base.text))
      found = base.text;
  });
  return found;
}

namespace {

unsigned used_params(const FunctionDef &fn, const std::string &name) {
  unsigned mask = 0;
  for_each_subexpr(fn, [&](const Expr &e) {
    if (auto k = param_index(e, name))
      mask |= 1u << *k;
  });
  return mask;
}

struct Candidate {
  const Ast *ast;
  const FunctionDef *fn;
  std::string params_name;
};

// Does `call` pass the parameter array `name` as an argument?
bool passes_params(const Expr &call, const std::string &name) {
  for (size_t i = 1; i < call.kids.size(); ++i) {
    const Expr &a = strip_casts(call.kid(i));
    if (a.kind == ExprKind::Ident && a.text == name)
      return true;
  }
  return false;
}

// Collects (callee, case label, branch statements) for calls passing the
// parameter array from inside switch cases.
struct Dispatch {
  std::string callee;
  std::string command;
  std::vector<const Stmt *> branch;
};

void collect_dispatch(const Stmt &sw, const std::string &name,
                      std::vector<Dispatch> &out) {
  // Flatten the switch body into a label-delimited sequence.
  std::vector<const Stmt *> seq;
  std::function<void(const Stmt *)> flatten = [&](const Stmt *s) {
    if (!s)
      return;
    if (s->kind == StmtKind::Compound) {
      for (const auto &b : s->body)
        flatten(b.get());
      return;
    }
    seq.push_back(s);
    if (s->kind == StmtKind::Case || s->kind == StmtKind::Default)
      flatten(s->then_s.get());
  };
  flatten(sw.then_s.get());
  std::vector<std::string> labels;
  std::vector<const Stmt *> branch;
  bool open = false; // previous case label still collecting
  auto flush = [&]() {
    for (const Stmt *s : branch) {
      for_each_stmt(s, [&](const Stmt &st) {
        if (st.kind == StmtKind::Case || st.kind == StmtKind::Default)
          return;
        for_each_expr(st, [&](const Expr &e) {
          walk(e, [&](const Expr &x) {
            if (x.kind != ExprKind::Call || !passes_params(x, name))
              return;
            std::string callee = callee_name(x);
            if (callee.empty())
              return;
            for (const auto &l : labels)
              out.push_back({callee, l, branch});
          });
        });
      });
    }
    labels.clear();
    branch.clear();
  };
  for (const Stmt *s : seq) {
    if (s->kind == StmtKind::Case || s->kind == StmtKind::Default) {
      if (!open)
        flush();
      open = true;
      if (s->kind == StmtKind::Case && s->expr)
        labels.push_back(render(*s->expr));
      continue;
    }
    open = false;
    branch.push_back(s);
  }
  flush();
}

} // namespace

std::vector<ParamRoot> find_roots(const std::vector<const Ast *> &asts) {
  std::vector<Candidate> cands;
  std::map<std::string, size_t> by_name;
  for (const Ast *ast : asts) {
    if (is_ca_unit(*ast))
      continue;
    for (const auto &f : ast->functions) {
      if (!f.body)
        continue;
      std::string name = params_name_of(f, *ast);
      if (name.empty())
        continue;
      by_name.emplace(f.name, cands.size());
      cands.push_back({ast, &f, name});
    }
  }

  std::set<std::string> callees;
  std::vector<ParamRoot> roots;
  std::vector<std::pair<size_t, Dispatch>> dispatched;
  for (const auto &c : cands) {
    for_each_stmt(c.fn->body.get(), [&](const Stmt &s) {
      if (s.kind == StmtKind::Switch) {
        std::vector<Dispatch> ds;
        collect_dispatch(s, c.params_name, ds);
        for (auto &d : ds) {
          auto it = by_name.find(d.callee);
          if (it != by_name.end() && cands[it->second].fn != c.fn)
            dispatched.emplace_back(it->second, std::move(d));
        }
      }
    });
    for_each_subexpr(*c.fn, [&](const Expr &e) {
      if (e.kind == ExprKind::Call && passes_params(e, c.params_name)) {
        std::string callee = callee_name(e);
        if (by_name.count(callee) && callee != c.fn->name)
          callees.insert(callee);
      }
    });
  }
  std::set<std::string> dispatched_names;
  for (const auto &[idx, d] : dispatched)
    dispatched_names.insert(d.callee);

  for (const auto &c : cands) {
    if (callees.count(c.fn->name))
      continue;
    ParamRoot r;
    r.ast = c.ast;
    r.fn = c.fn;
    r.params_name = c.params_name;
    r.used_mask = used_params(*c.fn, c.params_name);
    roots.push_back(std::move(r));
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto &[idx, d] : dispatched) {
    const auto &c = cands[idx];
    if (!seen.insert({c.fn->name, d.command}).second)
      continue;
    ParamRoot r;
    r.ast = c.ast;
    r.fn = c.fn;
    r.params_name = c.params_name;
    r.command = d.command;
    r.dispatch_branch = d.branch;
    r.used_mask = used_params(*c.fn, c.params_name);
    roots.push_back(std::move(r));
  }
  // Callees passed the array contribute to the used mask.
  for (auto &r : roots) {
    for_each_subexpr(*r.fn, [&](const Expr &e) {
      if (e.kind != ExprKind::Call || !passes_params(e, r.params_name))
        return;
      auto it = by_name.find(callee_name(e));
      if (it != by_name.end() && !dispatched_names.count(it->first))
        r.used_mask |= used_params(*cands[it->second].fn, cands[it->second].params_name);
    });
  }
  std::sort(roots.begin(), roots.end(), [](const ParamRoot &a, const ParamRoot &b) {
    return std::tie(a.ast->path, a.fn->name, a.command) <
           std::tie(b.ast->path, b.fn->name, b.command);
  });
  return roots;
}

std::vector<Annotation> parse_annotations(const std::string &text) {
  std::vector<Annotation> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#')
      continue;
    std::vector<std::string> cols;
    std::stringstream ss(t);
    std::string col;
    while (std::getline(ss, col, ','))
      cols.push_back(trim(col));
    auto bad = [&](const std::string &why) {
      return ConfigError("annotations line " + std::to_string(lineno) + ": " + why);
    };
    if (cols.size() != 5)
      throw bad("expected 5 comma-separated fields");
    Annotation a;
    a.entry_function = cols[0];
    if (a.entry_function.empty())
      throw bad("empty entry function");
    if (cols[1] != "*")
      a.command_id = cols[1];
    if (cols[2].size() != 1 || cols[2][0] < '0' || cols[2][0] > '3')
      throw bad("index must be 0..3");
    a.index = cols[2][0] - '0';
    auto role = parse_role(cols[3]);
    auto kind = parse_kind(cols[4]);
    if (!role)
      throw bad("unknown role '" + cols[3] + "'");
    if (!kind)
      throw bad("unknown kind '" + cols[4] + "'");
    a.role = *role;
    a.kind = *kind;
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

// ---- client-side evidence -----------------------------------------------

struct CaRecord {
  std::optional<std::string> command;
  int index;
  ParamRole role;
  ParamKind kind;
  SourceLocation loc;
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

bool before(const SourceLocation &a, const SourceLocation &b) {
  return std::tie(a.line, a.column) < std::tie(b.line, b.column);
}

// `X.params[k]` (X an identifier): returns {X, k}.
std::optional<std::pair<std::string, int>> op_param(const Expr &e) {
  const Expr &s = strip_casts(e);
  if (s.kind != ExprKind::Index)
    return std::nullopt;
  const Expr &m = strip_casts(s.kid(0));
  if (m.kind != ExprKind::Member || m.text != "params")
    return std::nullopt;
  const Expr &base = strip_casts(m.kid(0));
  if (base.kind != ExprKind::Ident)
    return std::nullopt;
  auto k = int_value(s.kid(1));
  if (!k || *k < 0 || *k > 3)
    return std::nullopt;
  return std::make_pair(base.text, static_cast<int>(*k));
}

// A use of a client parameter slot: `op.params[k].<group>.<field>`.
struct SlotUse {
  std::string op;
  int index;
  std::string group; // tmpref, memref, value
  std::string field; // buffer, size, parent, offset, a, b
  const Expr *expr;
  bool written;
  const Expr *rhs; // assigned value if written
  SourceLocation loc;
};

struct Invoke {
  std::string op;
  std::optional<std::string> command;
  SourceLocation loc;
};

struct ClientScan {
  std::vector<SlotUse> slots;
  std::vector<Invoke> invokes;
  std::map<std::string, std::vector<std::pair<SourceLocation, long long>>> param_types;
  std::set<std::string> shared_objects; // TEEC_SharedMemory instances
  std::set<std::string> initialized;    // locals declared with an initializer
  // ident -> locations of occurrences outside sizeof
  std::map<std::string, std::vector<SourceLocation>> mentions;
  std::map<std::string, long long> const_locals;
};

void scan_client_function(const FunctionDef &f, ClientScan &cs) {
  std::set<const Expr *> in_sizeof;
  for_each_stmt(f.body.get(), [&](const Stmt &s) {
    for (const auto &d : s.decls) {
      std::string base = d.type.base;
      if (base.rfind("struct ", 0) == 0)
        base = base.substr(7);
      if (base == "TEEC_SharedMemory")
        cs.shared_objects.insert(d.name);
      if (d.init) {
        cs.initialized.insert(d.name);
        if (auto v = int_value(*d.init))
          cs.const_locals[d.name] = *v;
      }
    }
    for_each_expr(s, [&](const Expr &root) {
      walk(root, [&](const Expr &e) {
        if (e.kind == ExprKind::Sizeof)
          walk(e, [&](const Expr &x) { in_sizeof.insert(&x); });
        if (e.kind == ExprKind::Ident && !in_sizeof.count(&e))
          cs.mentions[e.text].push_back(e.loc);
        if (e.kind == ExprKind::Call) {
          std::string name = callee_name(e);
          if (name == "TEEC_AllocateSharedMemory" || name == "TEEC_RegisterSharedMemory") {
            if (e.kids.size() > 2) {
              const Expr &a = strip_casts(e.kid(2));
              if (a.kind == ExprKind::Unary && a.text == "&")
                cs.shared_objects.insert(render(strip_casts(a.kid(0))));
            }
          }
          // Invocation: TEEC_InvokeCommand(sess, cmd, &op, origin) or a
          // wrapper taking &op.
          if (name == "TEEC_OpenSession")
            return;
          for (size_t i = 1; i < e.kids.size(); ++i) {
            const Expr &a = strip_casts(e.kid(i));
            if (a.kind != ExprKind::Unary || a.text != "&")
              continue;
            const Expr &target = strip_casts(a.kid(0));
            if (target.kind != ExprKind::Ident)
              continue;
            Invoke inv{target.text, std::nullopt, e.loc};
            if (name == "TEEC_InvokeCommand") {
              if (i != 3)
                continue;
              inv.command = render(strip_casts(e.kid(2)));
            } else {
              for (size_t j = 1; j < e.kids.size(); ++j) {
                const Expr &c = strip_casts(e.kid(j));
                if ((c.kind == ExprKind::Ident && all_caps(c.text)) ||
                    c.kind == ExprKind::IntLit) {
                  inv.command = c.text;
                  break;
                }
              }
            }
            cs.invokes.push_back(std::move(inv));
            break;
          }
        }
        if (e.kind == ExprKind::Assign) {
          const Expr &lhs = strip_casts(e.kid(0));
          if (lhs.kind == ExprKind::Member && lhs.text == "paramTypes") {
            const Expr &base = strip_casts(lhs.kid(0));
            std::optional<long long> v = int_value(e.kid(1));
            const Expr &rhs = strip_casts(e.kid(1));
            if (!v && rhs.kind == ExprKind::Ident && cs.const_locals.count(rhs.text))
              v = cs.const_locals[rhs.text];
            if (v && base.kind == ExprKind::Ident)
              cs.param_types[base.text].emplace_back(e.loc, *v);
          }
        }
      });
      // Slot uses, with write detection.
      std::function<void(const Expr &, bool, const Expr *)> visit =
          [&](const Expr &e, bool written, const Expr *rhs) {
            if (e.kind == ExprKind::Member) {
              const Expr &group = strip_casts(e.kid(0));
              if (group.kind == ExprKind::Member) {
                if (auto p = op_param(group.kid(0))) {
                  cs.slots.push_back({p->first, p->second, group.text, e.text, &e,
                                      written, rhs, e.loc});
                  return;
                }
              }
            }
            if (e.kind == ExprKind::Assign) {
              visit(*e.kids[0], true, e.kids[1].get());
              visit(*e.kids[1], false, nullptr);
              return;
            }
            for (const auto &k : e.kids)
              if (k)
                visit(*k, false, nullptr);
          };
      visit(root, false, nullptr);
    });
  });
}

ParamRole merge_roles(ParamRole a, ParamRole b) {
  if (a == ParamRole::Unknown)
    return b;
  if (b == ParamRole::Unknown || a == b)
    return a;
  if (a == ParamRole::SharedMemory || b == ParamRole::SharedMemory)
    return ParamRole::SharedMemory;
  return ParamRole::InOut;
}

ParamKind merge_kinds(ParamKind a, ParamKind b) {
  if (a == ParamKind::RegisteredMemref || b == ParamKind::RegisteredMemref)
    return ParamKind::RegisteredMemref;
  if (a == ParamKind::TempMemref || b == ParamKind::TempMemref)
    return ParamKind::TempMemref;
  if (a == ParamKind::Value || b == ParamKind::Value)
    return ParamKind::Value;
  return ParamKind::None;
}

std::vector<CaRecord> client_records(const FunctionDef &f) {
  ClientScan cs;
  scan_client_function(f, cs);
  std::vector<CaRecord> out;
  std::set<std::string> ops;
  for (const auto &s : cs.slots)
    ops.insert(s.op);
  for (const auto &[op, assigned] : cs.param_types)
    ops.insert(op);
  for (const auto &op : ops) {
    std::vector<Invoke> invs;
    for (const auto &i : cs.invokes)
      if (i.op == op)
        invs.push_back(i);
    std::sort(invs.begin(), invs.end(),
              [](const Invoke &a, const Invoke &b) { return before(a.loc, b.loc); });
    if (invs.empty())
      invs.push_back({op, std::nullopt, SourceLocation{f.loc.file, 1 << 30, 0}});
    for (size_t j = 0; j < invs.size(); ++j) {
      const SourceLocation &at = invs[j].loc;
      SourceLocation prev = j ? invs[j - 1].loc : SourceLocation{};
      SourceLocation next = j + 1 < invs.size() ? invs[j + 1].loc
                                                : SourceLocation{at.file, 1 << 30, 0};
      auto in_setup = [&](const SourceLocation &l) { return before(l, at); };
      auto in_result = [&](const SourceLocation &l) {
        return before(at, l) && before(l, next);
      };
      std::optional<long long> types;
      SourceLocation types_loc;
      for (const auto &[loc, v] : cs.param_types[op])
        if (in_setup(loc)) {
          types = v;
          types_loc = loc;
        }
      for (int k = 0; k < 4; ++k) {
        ParamRole role = ParamRole::Unknown;
        ParamKind kind = ParamKind::None;
        SourceLocation where;
        bool any = false;
        for (const auto &s : cs.slots) {
          if (s.op != op || s.index != k)
            continue;
          bool relevant = in_setup(s.loc) ? !before(s.loc, prev) || !prev.valid()
                                          : in_result(s.loc);
          if (!relevant)
            continue;
          if (!any)
            where = s.loc;
          any = true;
          if (s.group == "memref" && s.field == "parent" && s.written && s.rhs) {
            const Expr &r = strip_casts(*s.rhs);
            std::string obj = r.kind == ExprKind::Unary && r.text == "&"
                                  ? render(strip_casts(r.kid(0)))
                                  : render(r);
            if (cs.shared_objects.count(obj) || r.kind == ExprKind::Unary) {
              kind = ParamKind::RegisteredMemref;
              role = ParamRole::SharedMemory;
              where = s.loc;
            }
          } else if (s.group == "tmpref" && kind != ParamKind::RegisteredMemref) {
            kind = ParamKind::TempMemref;
            if (s.field == "buffer" && s.written && s.rhs) {
              const Expr *r = &strip_casts(*s.rhs);
              if (r->kind == ExprKind::Unary && r->text == "&")
                r = &strip_casts(r->kid(0));
              if (r->kind == ExprKind::Index)
                r = &strip_casts(r->kid(0));
              if (r->kind == ExprKind::Ident) {
                // Filled before the call means input; looked at afterwards
                // means output; a buffer nobody touches is an output.
                bool wrote = cs.initialized.count(r->text) > 0;
                bool read = false;
                for (const auto &m : cs.mentions[r->text]) {
                  if (m == r->loc)
                    continue;
                  if (before(m, at))
                    wrote = true;
                  else if (in_result(m))
                    read = true;
                }
                ParamRole dir = wrote && read ? ParamRole::InOut
                                : wrote       ? ParamRole::Input
                                              : ParamRole::Output;
                role = dir;
              } else if (role == ParamRole::Unknown) {
                role = ParamRole::Input;
              }
            }
          } else if (s.group == "value" && kind != ParamKind::RegisteredMemref) {
            kind = ParamKind::Value;
            ParamRole dir = in_setup(s.loc) && s.written ? ParamRole::Input
                                                         : ParamRole::Output;
            role = role == ParamRole::Unknown ? dir : merge_roles(role, dir);
          } else if (s.group == "memref" && kind == ParamKind::None) {
            kind = ParamKind::TempMemref;
          }
        }
        if (types) {
          unsigned nib = static_cast<unsigned>((*types >> (4 * k)) & 0xF);
          auto [r, kd] = decode_param_type(nib);
          if (kd != ParamKind::None) {
            role = r;
            kind = kd;
            if (!any)
              where = types_loc;
            any = true;
          }
        }
        if (!any || kind == ParamKind::None)
          continue;
        if (kind == ParamKind::TempMemref && role == ParamRole::Unknown)
          role = ParamRole::Input;
        out.push_back({invs[j].command, k, role, kind, where});
      }
    }
  }
  return out;
}

// ---- TA-side evidence ---------------------------------------------------

std::optional<std::pair<long long, SourceLocation>>
ta_param_types(const ParamRoot &root, const std::vector<const Stmt *> &extra) {
  std::set<std::string> formals;
  for (const auto &p : root.fn->params)
    if (!is_param_array_type(p.type) && p.type.pointers == 0)
      formals.insert(p.name);
  std::set<std::string> declared = declared_names(*root.fn, *root.ast);
  std::map<std::string, long long> consts;
  std::optional<std::pair<long long, SourceLocation>> found;

  auto is_types_ident = [&](const Expr &e) {
    const Expr &s = strip_casts(e);
    if (s.kind != ExprKind::Ident)
      return false;
    return formals.count(s.text) > 0 ||
           (!declared.count(s.text) && lower(s.text).find("param") != std::string::npos);
  };
  auto value_of = [&](const Expr &e) -> std::optional<long long> {
    if (auto v = int_value(e))
      return v;
    const Expr &s = strip_casts(e);
    if (s.kind == ExprKind::Ident && consts.count(s.text))
      return consts[s.text];
    return std::nullopt;
  };
  auto visit = [&](const Stmt &s) {
    for (const auto &d : s.decls)
      if (d.init)
        if (auto v = int_value(*d.init))
          consts[d.name] = *v;
    for_each_expr(s, [&](const Expr &root_e) {
      walk(root_e, [&](const Expr &e) {
        if (found || e.kind != ExprKind::Binary || (e.text != "!=" && e.text != "=="))
          return;
        for (int side = 0; side < 2; ++side) {
          if (is_types_ident(e.kid(static_cast<size_t>(side)))) {
            if (auto v = value_of(e.kid(static_cast<size_t>(1 - side)))) {
              found = std::make_pair(*v, e.loc);
              return;
            }
          }
        }
      });
    });
  };
  for (const Stmt *s : extra)
    for_each_stmt(s, visit);
  if (!found)
    for_each_stmt(root.fn->body.get(), visit);
  return found;
}

} // namespace

Classification classify_params(const std::vector<const Ast *> &asts,
                               const std::vector<Annotation> &annotations) {
  Classification out;
  // Client records from every unit (client snippets often call a wrapper
  // instead of TEEC_InvokeCommand, so units are not filtered by kind).
  std::vector<CaRecord> ca;
  for (const Ast *ast : asts) {
    for (const auto &f : ast->functions) {
      if (!f.body)
        continue;
      auto recs = client_records(f);
      ca.insert(ca.end(), recs.begin(), recs.end());
    }
  }

  for (const auto &root : find_roots(asts)) {
    std::vector<const CaRecord *> matching;
    if (root.command)
      for (const auto &r : ca)
        if (r.command == root.command)
          matching.push_back(&r);
    auto ta = ta_param_types(root, root.dispatch_branch);
    // Client records for other commands only stand in when the TA side
    // says nothing itself.
    if (matching.empty() && !(root.command && ta))
      for (const auto &r : ca)
        matching.push_back(&r);

    for (int k = 0; k < 4; ++k) {
      ParamBinding b;
      b.entry_function = root.fn->name;
      b.command_id = root.command;
      b.index = k;
      b.file = root.ast->path;

      ParamRole ca_role = ParamRole::Unknown;
      ParamKind ca_kind = ParamKind::None;
      SourceLocation ca_loc;
      for (const CaRecord *r : matching) {
        if (r->index != k)
          continue;
        ca_role = merge_roles(ca_role, r->role);
        ca_kind = merge_kinds(ca_kind, r->kind);
        if (!ca_loc.valid())
          ca_loc = r->loc;
      }
      if (ca_kind == ParamKind::RegisteredMemref)
        ca_role = ParamRole::SharedMemory;

      ParamRole ta_role = ParamRole::Unknown;
      ParamKind ta_kind = ParamKind::None;
      if (ta) {
        auto [r, kd] = decode_param_type(static_cast<unsigned>((ta->first >> (4 * k)) & 0xF));
        ta_role = r;
        ta_kind = kd;
      }

      if (ca_kind != ParamKind::None) {
        b.role = ca_role;
        b.kind = ca_kind;
        b.evidence = Evidence::CaSide;
        b.location = ca_loc;
        bool ca_value = ca_kind == ParamKind::Value;
        bool ta_value = ta_kind == ParamKind::Value;
        if (ta_kind != ParamKind::None && ca_value != ta_value)
          out.warnings.push_back(
              {ca_loc, "conflicting evidence for " + b.entry_function + " param " +
                           std::to_string(k) + ": client side says " +
                           to_string(ca_kind) + ", TA side says " +
                           to_string(ta_kind) + "; using client side"});
      } else if (ta_kind != ParamKind::None) {
        b.role = ta_role;
        b.kind = ta_kind;
        b.evidence = Evidence::TaSide;
        b.location = ta->second;
      } else {
        for (const auto &a : annotations) {
          if (a.entry_function != b.entry_function || a.index != k)
            continue;
          if (a.command_id && a.command_id != b.command_id)
            continue;
          b.role = a.role;
          b.kind = a.kind;
          b.evidence = Evidence::Annotation;
          b.location = root.fn->loc;
          if (a.command_id)
            break;
        }
      }
      // Keep the binding invariants.
      if (b.kind == ParamKind::RegisteredMemref)
        b.role = ParamRole::SharedMemory;
      if (b.role == ParamRole::SharedMemory && b.kind != ParamKind::RegisteredMemref)
        b.kind = ParamKind::RegisteredMemref;
      if (b.kind == ParamKind::None)
        b.role = ParamRole::Unknown;
      if (b.role == ParamRole::Unknown && (root.used_mask >> k & 1u))
        out.warnings.push_back({root.fn->loc, "role of " + b.entry_function +
                                                  (b.command_id ? " [" + *b.command_id + "]" : "") +
                                                  " param " + std::to_string(k) +
                                                  " is unknown; not checked"});
      out.bindings.push_back(std::move(b));
    }
  }
  std::sort(out.bindings.begin(), out.bindings.end(),
            [](const ParamBinding &a, const ParamBinding &b) {
              return std::tie(a.entry_function, a.command_id, a.index, a.file) <
                     std::tie(b.entry_function, b.command_id, b.index, b.file);
            });
  std::sort(out.warnings.begin(), out.warnings.end());
  out.warnings.erase(std::unique(out.warnings.begin(), out.warnings.end()),
                     out.warnings.end());
  return out;
}

} // namespace partcheck
