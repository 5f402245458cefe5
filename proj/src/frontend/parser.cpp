#include "partcheck/parser.hpp"

#include "partcheck/lexer.hpp"

#include <array>
#include <set>

namespace partcheck {
namespace {

constexpr int kMaxNesting = 200;

struct ParseError {
  size_t token;
  std::string message;
};

const std::set<std::string, std::less<>> &keywords() {
  static const std::set<std::string, std::less<>> k = {
      "auto",     "break",   "case",     "char",     "const",    "continue",
      "default",  "do",      "double",   "else",     "enum",     "extern",
      "float",    "for",     "goto",     "if",       "inline",   "int",
      "long",     "register", "restrict", "return",  "short",    "signed",
      "sizeof",   "static",  "struct",   "switch",   "typedef",  "union",
      "unsigned", "void",    "volatile", "while",    "_Bool",    "asm",
      "__asm__",  "__asm"};
  return k;
}

bool is_type_keyword(std::string_view s) {
  static const std::set<std::string, std::less<>> k = {
      "void", "char",   "short",    "int",   "long", "float",
      "double", "signed", "unsigned", "_Bool", "bool", "_Complex"};
  return k.count(s) > 0;
}

bool is_qualifier(std::string_view s) {
  static const std::set<std::string, std::less<>> k = {
      "const",      "volatile",  "restrict",  "__restrict", "__restrict__",
      "_Noreturn",  "__extension__", "__const", "__volatile__"};
  return k.count(s) > 0;
}

bool is_storage(std::string_view s) {
  static const std::set<std::string, std::less<>> k = {
      "typedef", "static", "extern", "register", "auto",
      "inline",  "__inline", "__inline__", "_Thread_local"};
  return k.count(s) > 0;
}

const std::set<std::string, std::less<>> &builtin_typedefs() {
  static const std::set<std::string, std::less<>> k = {
      "TEE_Result", "TEE_Param", "TEE_ObjectHandle", "TEE_OperationHandle",
      "TEE_Attribute", "TEE_ObjectInfo", "TEE_UUID", "TEE_Time",
      "TEE_TASessionHandle", "TEE_ObjectEnumHandle", "TEE_BigInt",
      "TEE_PropSetHandle", "TEE_Identity", "TEEC_Context", "TEEC_Session",
      "TEEC_Operation", "TEEC_SharedMemory", "TEEC_Result", "TEEC_UUID",
      "TEEC_Parameter", "TEEC_TempMemoryReference",
      "TEEC_RegisteredMemoryReference", "TEEC_Value", "FILE", "va_list",
      "size_t", "ssize_t", "bool", "uintptr_t", "intptr_t", "ptrdiff_t"};
  return k;
}

bool has_type_suffix(std::string_view s) {
  return s.size() > 2 && s.substr(s.size() - 2) == "_t";
}

struct DeclSpecs {
  TypeRef type;
  bool is_typedef = false;
  bool is_static = false;
  bool is_extern = false;
  bool any = false;
};

class Parser {
public:
  Parser(SourceUnit &unit, std::vector<Token> toks, Ast &ast)
      : unit_(unit), toks_(std::move(toks)), ast_(ast) {
    scopes_.emplace_back();
  }

  void run() {
    std::vector<StmtPtr> top_items;
    bool has_statements = false;
    while (!at_end()) {
      size_t start = pos_;
      try {
        parse_external(top_items, has_statements);
      } catch (const ParseError &err) {
        pos_ = start;
        skip_statement(true);
        diag(err.token < toks_.size() ? err.token : start, err.message);
      }
      if (pos_ == start)
        ++pos_;
    }
    // File-scope initializers must be constant; a file of declarations that
    // read variables is a fragment of a function body.
    if (!has_statements && ast_.functions.empty())
      for (const auto &item : top_items)
        for (const auto &d : item->decls)
          if (d.init && !constant_initializer(*d.init))
            has_statements = true;
    if (has_statements) {
      FunctionDef fn;
      fn.name = kSnippetFunction;
      fn.synthetic = true;
      fn.return_type.base = "void";
      auto body = std::make_unique<Stmt>(StmtKind::Compound,
                                         top_items.empty() ? loc(0)
                                                           : top_items[0]->loc);
      fn.loc = body->loc;
      body->body = std::move(top_items);
      fn.body = std::move(body);
      ast_.functions.push_back(std::move(fn));
    } else {
      for (auto &item : top_items)
        for (auto &d : item->decls)
          ast_.globals.push_back(std::move(d));
    }
  }

private:
  static bool constant_initializer(const Expr &e) {
    bool constant = true;
    walk(e, [&](const Expr &x) {
      if (x.kind == ExprKind::Sizeof)
        return;
      if (x.kind == ExprKind::Index || x.kind == ExprKind::Call ||
          (x.kind == ExprKind::Member && !x.arrow && !x.kids.empty() &&
           x.kids[0]->kind != ExprKind::Ident))
        constant = false;
      if (x.kind == ExprKind::Member && x.arrow)
        constant = false;
    });
    return constant;
  }

  // ---- token helpers ----------------------------------------------------
  const Token &peek(size_t k = 0) const {
    size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool is(std::string_view text, size_t k = 0) const {
    const Token &t = peek(k);
    return t.kind != TokenKind::End && t.kind != TokenKind::String &&
           t.kind != TokenKind::Char && t.text == text;
  }
  bool is_ident(size_t k = 0) const {
    const Token &t = peek(k);
    return t.kind == TokenKind::Ident && !keywords().count(t.text);
  }
  bool accept(std::string_view text) {
    if (!is(text))
      return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view text) {
    if (!accept(text))
      fail("expected '" + std::string(text) + "'");
  }
  [[noreturn]] void fail(std::string message) const {
    throw ParseError{pos_, std::move(message)};
  }
  SourceLocation loc(size_t token) const {
    size_t i = token < toks_.size() ? token : toks_.size() - 1;
    return unit_.locate(toks_[i].offset);
  }
  SourceLocation here() const { return loc(pos_); }
  void diag(size_t token, std::string message) {
    ast_.diagnostics.push_back({loc(token), std::move(message)});
  }

  struct DepthGuard {
    Parser &p;
    explicit DepthGuard(Parser &parser) : p(parser) {
      if (++p.depth_ > kMaxNesting) {
        --p.depth_;
        p.fail("nesting too deep");
      }
    }
    ~DepthGuard() { --p.depth_; }
  };

  // Skips to the end of the current statement. Stops before a `}` that
  // closes an enclosing block unless `top_level`.
  void skip_statement(bool top_level) {
    int depth = 0;
    size_t start = pos_;
    while (!at_end()) {
      const Token &t = peek();
      if (t.kind == TokenKind::Punct) {
        if (t.text == "(" || t.text == "[" || t.text == "{") {
          ++depth;
        } else if (t.text == ")" || t.text == "]") {
          if (depth > 0)
            --depth;
        } else if (t.text == "}") {
          if (depth == 0) {
            if (top_level || pos_ == start)
              ++pos_;
            return;
          }
          --depth;
          if (depth == 0) {
            ++pos_;
            if (is(";"))
              ++pos_;
            return;
          }
        } else if (t.text == ";" && depth == 0) {
          ++pos_;
          return;
        }
      }
      ++pos_;
    }
  }

  // ---- scopes -----------------------------------------------------------
  void declare(const std::string &name) {
    if (!name.empty())
      scopes_.back().insert(name);
  }
  bool is_variable(const std::string &name) const {
    for (const auto &s : scopes_)
      if (s.count(name))
        return true;
    return false;
  }
  bool is_typedef_name(const std::string &name) const {
    if (is_variable(name))
      return false;
    return ast_.typedef_names.count(name) || builtin_typedefs().count(name) ||
           has_type_suffix(name);
  }
  struct ScopeGuard {
    Parser &p;
    explicit ScopeGuard(Parser &parser) : p(parser) { p.scopes_.emplace_back(); }
    ~ScopeGuard() { p.scopes_.pop_back(); }
  };

  bool is_attribute_word(size_t k = 0) const {
    const Token &t = peek(k);
    return t.kind == TokenKind::Ident && t.text.size() > 2 &&
           t.text.compare(0, 2, "__") == 0 && !is_qualifier(t.text) &&
           !keywords().count(t.text);
  }

  // True if the tokens at `k` begin a type name.
  bool is_type_start(size_t k = 0) const {
    const Token &t = peek(k);
    if (t.kind != TokenKind::Ident)
      return false;
    if (is_type_keyword(t.text) || is_qualifier(t.text) || is_storage(t.text) ||
        t.text == "struct" || t.text == "union" || t.text == "enum")
      return true;
    return is_typedef_name(t.text);
  }

  bool looks_like_declaration() const {
    if (is_type_start(0))
      return true;
    if (!is_ident(0) || is_variable(peek().text))
      return false;
    if (is_ident(1))
      return true;
    if (is_attribute_word(0) && (is_ident(1) || is_type_start(1)))
      return true;
    if (is("*", 1)) {
      size_t k = 1;
      while (is("*", k))
        ++k;
      if (!is_ident(k))
        return false;
      return is("=", k + 1) || is(";", k + 1) || is(",", k + 1) ||
             is("[", k + 1);
    }
    return false;
  }

  // ---- declarations -----------------------------------------------------
  void skip_balanced() {
    // Current token is an opening bracket.
    int depth = 0;
    do {
      if (is("(") || is("[") || is("{"))
        ++depth;
      else if (is(")") || is("]") || is("}"))
        --depth;
      ++pos_;
    } while (depth > 0 && !at_end());
  }

  void skip_attributes() {
    while (true) {
      if ((is("__attribute__") || is("__attribute") || is("__declspec") ||
           is("asm") || is("__asm__") || is("__asm")) &&
          is("(", 1)) {
        ++pos_;
        skip_balanced();
      } else if (is_attribute_word() && !is("(", 1) &&
                 (is_ident(1) || is("*", 1) || is_type_start(1) || is(")", 1) ||
                  is(",", 1) || is(";", 1) || is("=", 1) || is("[", 1))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  DeclSpecs parse_decl_specs(bool allow_unknown_type) {
    DeclSpecs s;
    std::string words;
    bool have_type = false;
    auto add_word = [&](const std::string &w) {
      words += words.empty() ? w : " " + w;
    };
    while (!at_end()) {
      skip_attributes();
      const Token &t = peek();
      if (t.kind != TokenKind::Ident)
        break;
      if (t.text == "typedef") {
        s.is_typedef = true;
      } else if (t.text == "static") {
        s.is_static = true;
      } else if (t.text == "extern") {
        s.is_extern = true;
      } else if (is_storage(t.text) || is_qualifier(t.text)) {
        // no effect on the analysis
      } else if (is_type_keyword(t.text)) {
        add_word(t.text);
        have_type = true;
      } else if (t.text == "struct" || t.text == "union" || t.text == "enum") {
        std::string w = t.text;
        ++pos_;
        skip_attributes();
        if (is_ident()) {
          w += " " + peek().text;
          ++pos_;
        }
        if (is("{"))
          skip_balanced();
        add_word(w);
        have_type = true;
        s.any = true;
        continue;
      } else if (!have_type && is_ident() &&
                 (is_typedef_name(t.text) ||
                  (allow_unknown_type && !is_variable(t.text) &&
                   (is_ident(1) || is("*", 1) || is("(", 1))))) {
        add_word(t.text);
        have_type = true;
      } else {
        break;
      }
      s.any = true;
      ++pos_;
    }
    s.type.base = words.empty() ? "int" : words;
    return s;
  }

  // Parses one declarator on top of `base`.
  Decl parse_declarator(const TypeRef &base, bool abstract_ok) {
    DepthGuard guard(*this);
    Decl d;
    d.type.base = base.base;
    d.type.pointers = base.pointers;
    d.loc = here();
    skip_attributes();
    while (is("*") || (peek().kind == TokenKind::Ident && is_qualifier(peek().text))) {
      if (is("*"))
        ++d.type.pointers;
      ++pos_;
      skip_attributes();
    }
    if (is("(") && (is("*", 1) || is("^", 1))) {
      ++pos_;
      while (accept("*") || accept("^"))
        ++d.type.pointers;
      skip_attributes();
      if (is_ident()) {
        d.loc = here();
        d.name = peek().text;
        ++pos_;
      }
      while (is("["))
        parse_array_suffix(d.type);
      expect(")");
      d.type.function_pointer = true;
      if (is("("))
        skip_balanced();
      return finish_declarator(d);
    }
    if (is_ident()) {
      d.loc = here();
      d.name = peek().text;
      ++pos_;
    } else if (!abstract_ok) {
      fail("expected declarator");
    }
    while (true) {
      if (is("[")) {
        parse_array_suffix(d.type);
      } else if (is("(") && !d.type.function_pointer && !d.is_function) {
        parse_params(d);
      } else {
        break;
      }
    }
    return finish_declarator(d);
  }

  Decl finish_declarator(Decl &d) {
    skip_attributes();
    return std::move(d);
  }

  void parse_array_suffix(TypeRef &t) {
    expect("[");
    if (accept("]")) {
      t.dims.push_back(nullptr);
      return;
    }
    while (peek().kind == TokenKind::Ident &&
           (is_qualifier(peek().text) || peek().text == "static"))
      ++pos_;
    t.dims.push_back(parse_assign());
    expect("]");
  }

  void parse_params(Decl &fn) {
    expect("(");
    fn.is_function = true;
    if (accept(")"))
      return;
    if (is("void") && is(")", 1)) {
      pos_ += 2;
      return;
    }
    while (true) {
      if (accept("...")) {
        fn.variadic = true;
      } else {
        DeclSpecs specs = parse_decl_specs(true);
        if (!specs.any)
          fail("expected parameter declaration");
        Decl p = parse_declarator(specs.type, true);
        // Array parameters decay, but the declared extent is kept.
        fn.params.push_back(std::move(p));
      }
      if (accept(")"))
        return;
      expect(",");
    }
  }

  ExprPtr parse_initializer() {
    if (is("{"))
      return parse_init_list();
    return parse_assign();
  }

  ExprPtr parse_init_list() {
    DepthGuard guard(*this);
    auto list = std::make_unique<Expr>(ExprKind::InitList, here());
    expect("{");
    while (!accept("}")) {
      if (at_end())
        fail("unterminated initializer list");
      if (is(".") || is("[")) {
        SourceLocation l = here();
        std::string designator;
        while (is(".") || is("[")) {
          if (accept(".")) {
            if (!is_ident())
              fail("expected member designator");
            designator += "." + peek().text;
            ++pos_;
          } else {
            ++pos_;
            auto idx = parse_conditional();
            designator += "[" + render(*idx) + "]";
            expect("]");
          }
        }
        expect("=");
        auto d = std::make_unique<Expr>(ExprKind::Designator, l, designator);
        d->kids.push_back(parse_initializer());
        list->kids.push_back(std::move(d));
      } else {
        list->kids.push_back(parse_initializer());
      }
      if (!accept(",")) {
        expect("}");
        break;
      }
    }
    return list;
  }

  // Parses the declarators following `specs` up to and including `;`.
  void parse_init_declarators(const DeclSpecs &specs, std::vector<Decl> &out) {
    if (accept(";"))
      return;
    while (true) {
      Decl d = parse_declarator(specs.type, false);
      d.is_typedef = specs.is_typedef;
      d.is_static = specs.is_static;
      d.is_extern = specs.is_extern;
      if (accept("="))
        d.init = parse_initializer();
      if (d.is_typedef) {
        ast_.typedef_names.insert(d.name);
      } else if (d.is_function) {
        ast_.arities[d.name] = d.variadic ? -1 : static_cast<int>(d.params.size());
      } else {
        declare(d.name);
      }
      if (!d.is_typedef && !d.is_function)
        out.push_back(std::move(d));
      if (accept(";"))
        return;
      expect(",");
    }
  }

  // Is the `Ident (` at the cursor an implicit-int function definition?
  bool implicit_int_function() const {
    size_t k = 1;
    int depth = 0;
    for (; pos_ + k < toks_.size(); ++k) {
      const Token &t = peek(k);
      if (t.kind == TokenKind::End)
        return false;
      if (t.kind == TokenKind::Punct && t.text == "(")
        ++depth;
      else if (t.kind == TokenKind::Punct && t.text == ")") {
        if (--depth == 0)
          break;
      }
    }
    return is("{", k + 1);
  }

  void parse_external(std::vector<StmtPtr> &items, bool &has_statements) {
    if (accept(";"))
      return;
    bool decl = looks_like_declaration();
    if (!decl && is_ident() && is("(", 1) && implicit_int_function())
      decl = true;
    if (!decl) {
      auto st = parse_statement_recovering();
      has_statements = true;
      items.push_back(std::move(st));
      return;
    }
    size_t start = pos_;
    SourceLocation start_loc = here();
    DeclSpecs specs = parse_decl_specs(true);
    if (accept(";"))
      return;
    Decl first = parse_declarator(specs.type, false);
    if (first.is_function && is("{")) {
      parse_function_body(specs, std::move(first));
      return;
    }
    // Not a function definition: reparse as a declaration list.
    pos_ = start;
    specs = parse_decl_specs(true);
    auto st = std::make_unique<Stmt>(StmtKind::Decl, start_loc);
    parse_init_declarators(specs, st->decls);
    if (!st->decls.empty())
      items.push_back(std::move(st));
  }

  void parse_function_body(const DeclSpecs &specs, Decl decl) {
    FunctionDef fn;
    fn.name = decl.name;
    fn.loc = decl.loc;
    fn.return_type = std::move(decl.type);
    fn.params = std::move(decl.params);
    fn.variadic = decl.variadic;
    fn.is_static = specs.is_static;
    ast_.arities[fn.name] = fn.variadic ? -1 : static_cast<int>(fn.params.size());
    ScopeGuard scope(*this);
    for (const auto &p : fn.params)
      declare(p.name);
    fn.body = parse_compound();
    ast_.functions.push_back(std::move(fn));
  }

  // ---- statements -------------------------------------------------------
  StmtPtr parse_statement_recovering() {
    size_t start = pos_;
    try {
      return parse_statement();
    } catch (const ParseError &err) {
      pos_ = start;
      SourceLocation l = here();
      skip_statement(false);
      if (pos_ == start && !at_end())
        ++pos_;
      diag(start, err.message);
      auto st = std::make_unique<Stmt>(StmtKind::Skipped, l);
      st->label = err.message;
      return st;
    }
  }

  StmtPtr parse_compound() {
    DepthGuard guard(*this);
    auto st = std::make_unique<Stmt>(StmtKind::Compound, here());
    expect("{");
    ScopeGuard scope(*this);
    while (!accept("}")) {
      if (at_end()) {
        diag(pos_, "missing '}' at end of input");
        break;
      }
      st->body.push_back(parse_statement_recovering());
    }
    return st;
  }

  StmtPtr parse_statement() {
    DepthGuard guard(*this);
    SourceLocation l = here();
    const Token &t = peek();
    if (t.kind == TokenKind::Punct) {
      if (t.text == "{")
        return parse_compound();
      if (t.text == ";") {
        ++pos_;
        return std::make_unique<Stmt>(StmtKind::Empty, l);
      }
      if (t.text == "...") {
        ++pos_;
        diag(pos_ - 1, "elided code");
        auto st = std::make_unique<Stmt>(StmtKind::Skipped, l);
        st->label = "elided code";
        return st;
      }
    }
    if (t.kind == TokenKind::Ident) {
      const std::string &w = t.text;
      if (w == "if") {
        ++pos_;
        auto st = std::make_unique<Stmt>(StmtKind::If, l);
        expect("(");
        st->expr = parse_expr();
        expect(")");
        st->then_s = parse_statement_recovering();
        if (accept("else"))
          st->else_s = parse_statement_recovering();
        return st;
      }
      if (w == "while") {
        ++pos_;
        auto st = std::make_unique<Stmt>(StmtKind::While, l);
        expect("(");
        st->expr = parse_expr();
        expect(")");
        st->then_s = parse_statement_recovering();
        return st;
      }
      if (w == "do") {
        ++pos_;
        auto st = std::make_unique<Stmt>(StmtKind::DoWhile, l);
        st->then_s = parse_statement_recovering();
        expect("while");
        expect("(");
        st->expr = parse_expr();
        expect(")");
        expect(";");
        return st;
      }
      if (w == "for") {
        ++pos_;
        auto st = std::make_unique<Stmt>(StmtKind::For, l);
        ScopeGuard scope(*this);
        expect("(");
        if (!accept(";")) {
          SourceLocation il = here();
          if (looks_like_declaration()) {
            auto d = std::make_unique<Stmt>(StmtKind::Decl, il);
            DeclSpecs specs = parse_decl_specs(true);
            parse_init_declarators(specs, d->decls);
            st->init = std::move(d);
          } else {
            auto e = std::make_unique<Stmt>(StmtKind::Expr, il);
            e->expr = parse_expr();
            expect(";");
            st->init = std::move(e);
          }
        }
        if (!is(";"))
          st->expr = parse_expr();
        expect(";");
        if (!is(")"))
          st->step = parse_expr();
        expect(")");
        st->then_s = parse_statement_recovering();
        return st;
      }
      if (w == "switch") {
        ++pos_;
        auto st = std::make_unique<Stmt>(StmtKind::Switch, l);
        expect("(");
        st->expr = parse_expr();
        expect(")");
        st->then_s = parse_statement_recovering();
        return st;
      }
      if (w == "case") {
        ++pos_;
        auto st = std::make_unique<Stmt>(StmtKind::Case, l);
        st->expr = parse_conditional();
        if (accept("...")) // GNU case range
          parse_conditional();
        expect(":");
        st->then_s = case_body();
        return st;
      }
      if (w == "default") {
        ++pos_;
        expect(":");
        auto st = std::make_unique<Stmt>(StmtKind::Default, l);
        st->then_s = case_body();
        return st;
      }
      if (w == "break" || w == "continue") {
        ++pos_;
        expect(";");
        return std::make_unique<Stmt>(w == "break" ? StmtKind::Break
                                                   : StmtKind::Continue,
                                      l);
      }
      if (w == "return") {
        ++pos_;
        auto st = std::make_unique<Stmt>(StmtKind::Return, l);
        if (!is(";"))
          st->expr = parse_expr();
        expect(";");
        return st;
      }
      if (w == "goto") {
        ++pos_;
        auto st = std::make_unique<Stmt>(StmtKind::Goto, l);
        if (is_ident()) {
          st->label = peek().text;
          ++pos_;
        } else {
          fail("expected label after goto");
        }
        expect(";");
        return st;
      }
      if (w == "asm" || w == "__asm__" || w == "__asm")
        fail("unsupported construct: inline assembly");
      if (is_ident() && is(":", 1)) {
        auto st = std::make_unique<Stmt>(StmtKind::Label, l);
        st->label = w;
        pos_ += 2;
        if (!is("}"))
          st->then_s = parse_statement_recovering();
        return st;
      }
      if (looks_like_declaration()) {
        auto st = std::make_unique<Stmt>(StmtKind::Decl, l);
        DeclSpecs specs = parse_decl_specs(true);
        parse_init_declarators(specs, st->decls);
        return st;
      }
    }
    auto st = std::make_unique<Stmt>(StmtKind::Expr, l);
    st->expr = parse_expr();
    expect(";");
    return st;
  }

  // A case label followed directly by `}` or another label has no statement.
  StmtPtr case_body() {
    if (is("}") || is("case") || is("default"))
      return nullptr;
    return parse_statement_recovering();
  }

  // ---- expressions ------------------------------------------------------
  ExprPtr parse_expr() {
    DepthGuard guard(*this);
    auto lhs = parse_assign();
    while (is(",")) {
      SourceLocation l = here();
      ++pos_;
      auto e = std::make_unique<Expr>(ExprKind::Comma, l, ",");
      e->kids.push_back(std::move(lhs));
      e->kids.push_back(parse_assign());
      lhs = std::move(e);
    }
    return lhs;
  }

  static bool is_assign_op(std::string_view s) {
    static const std::array<std::string_view, 11> ops = {
        "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="};
    for (auto op : ops)
      if (s == op)
        return true;
    return false;
  }

  ExprPtr parse_assign() {
    DepthGuard guard(*this);
    auto lhs = parse_conditional();
    if (peek().kind == TokenKind::Punct && is_assign_op(peek().text)) {
      auto e = std::make_unique<Expr>(ExprKind::Assign, lhs->loc, peek().text);
      ++pos_;
      e->kids.push_back(std::move(lhs));
      e->kids.push_back(parse_assign());
      return e;
    }
    return lhs;
  }

  ExprPtr parse_conditional() {
    DepthGuard guard(*this);
    auto c = parse_binary(1);
    if (!is("?"))
      return c;
    ++pos_;
    auto e = std::make_unique<Expr>(ExprKind::Cond, c->loc, "?:");
    e->kids.push_back(std::move(c));
    if (is(":")) // GNU `a ?: b`
      e->kids.push_back(nullptr);
    else
      e->kids.push_back(parse_expr());
    expect(":");
    e->kids.push_back(parse_conditional());
    return e;
  }

  static int binary_precedence(const Token &t) {
    if (t.kind != TokenKind::Punct)
      return -1;
    const std::string &s = t.text;
    if (s == "||")
      return 1;
    if (s == "&&")
      return 2;
    if (s == "|")
      return 3;
    if (s == "^")
      return 4;
    if (s == "&")
      return 5;
    if (s == "==" || s == "!=")
      return 6;
    if (s == "<" || s == ">" || s == "<=" || s == ">=")
      return 7;
    if (s == "<<" || s == ">>")
      return 8;
    if (s == "+" || s == "-")
      return 9;
    if (s == "*" || s == "/" || s == "%")
      return 10;
    return -1;
  }

  ExprPtr parse_binary(int min_prec) {
    DepthGuard guard(*this);
    auto lhs = parse_unary();
    while (true) {
      int prec = binary_precedence(peek());
      if (prec < min_prec)
        return lhs;
      std::string op = peek().text;
      ++pos_;
      auto rhs = parse_binary(prec + 1);
      auto e = std::make_unique<Expr>(ExprKind::Binary, lhs->loc, op);
      e->kids.push_back(std::move(lhs));
      e->kids.push_back(std::move(rhs));
      lhs = std::move(e);
    }
  }

  // At `(`: does a type name follow?
  bool is_cast_start() const {
    if (!is("("))
      return false;
    const Token &t = peek(1);
    if (t.kind != TokenKind::Ident)
      return false;
    if (is_type_keyword(t.text) || is_qualifier(t.text) || t.text == "struct" ||
        t.text == "union" || t.text == "enum")
      return true;
    if (is_variable(t.text))
      return false;
    if (is_typedef_name(t.text) && (is(")", 2) || is("*", 2)))
      return true;
    // `(Unknown *)` / `(Unknown **)`
    size_t k = 2;
    if (!is("*", k))
      return false;
    while (is("*", k))
      ++k;
    return is(")", k);
  }

  std::string parse_type_name() {
    DeclSpecs specs = parse_decl_specs(true);
    if (!specs.any)
      fail("expected type name");
    Decl d = parse_declarator(specs.type, true);
    return d.type.spelling();
  }

  ExprPtr parse_unary() {
    DepthGuard guard(*this);
    SourceLocation l = here();
    const Token &t = peek();
    if (t.kind == TokenKind::Punct) {
      if (t.text == "++" || t.text == "--" || t.text == "+" || t.text == "-" ||
          t.text == "!" || t.text == "~" || t.text == "*" || t.text == "&") {
        std::string op = t.text;
        ++pos_;
        auto e = std::make_unique<Expr>(ExprKind::Unary, l, op);
        e->kids.push_back(parse_unary());
        return e;
      }
      if (is_cast_start()) {
        ++pos_;
        std::string type = parse_type_name();
        expect(")");
        if (is("{")) {
          auto lit = parse_init_list();
          lit->text = type;
          return parse_postfix_ops(std::move(lit));
        }
        auto e = std::make_unique<Expr>(ExprKind::Cast, l, type);
        e->kids.push_back(parse_unary());
        return e;
      }
    }
    if (t.kind == TokenKind::Ident &&
        (t.text == "sizeof" || t.text == "_Alignof" || t.text == "__alignof__")) {
      ++pos_;
      auto e = std::make_unique<Expr>(ExprKind::Sizeof, l);
      if (is_cast_start()) {
        ++pos_;
        e->text = parse_type_name();
        expect(")");
      } else {
        e->kids.push_back(parse_unary());
      }
      return e;
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() { return parse_postfix_ops(parse_primary()); }

  ExprPtr parse_postfix_ops(ExprPtr e) {
    while (true) {
      SourceLocation l = e->loc;
      if (accept("[")) {
        auto idx = std::make_unique<Expr>(ExprKind::Index, l);
        idx->kids.push_back(std::move(e));
        idx->kids.push_back(parse_expr());
        expect("]");
        e = std::move(idx);
      } else if (accept("(")) {
        DepthGuard guard(*this);
        auto call = std::make_unique<Expr>(ExprKind::Call, l);
        call->kids.push_back(std::move(e));
        if (!accept(")")) {
          while (true) {
            call->kids.push_back(parse_assign());
            if (accept(")"))
              break;
            expect(",");
          }
        }
        e = std::move(call);
      } else if (is(".") || is("->")) {
        bool arrow = is("->");
        ++pos_;
        if (!is_ident())
          fail("expected member name");
        auto m = std::make_unique<Expr>(ExprKind::Member, l, peek().text);
        m->arrow = arrow;
        ++pos_;
        m->kids.push_back(std::move(e));
        e = std::move(m);
      } else if (is("++") || is("--")) {
        auto p = std::make_unique<Expr>(ExprKind::Postfix, l, peek().text);
        ++pos_;
        p->kids.push_back(std::move(e));
        e = std::move(p);
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_primary() {
    DepthGuard guard(*this);
    SourceLocation l = here();
    const Token &t = peek();
    switch (t.kind) {
    case TokenKind::Ident:
      if (keywords().count(t.text) && t.text != "sizeof")
        fail("unexpected keyword '" + t.text + "'");
      ++pos_;
      return std::make_unique<Expr>(ExprKind::Ident, l, t.text);
    case TokenKind::Number: {
      ++pos_;
      bool is_hex = t.text.size() > 1 && t.text[0] == '0' &&
                    (t.text[1] == 'x' || t.text[1] == 'X');
      bool is_float = t.text.find('.') != std::string::npos ||
                      (!is_hex && (t.text.find('e') != std::string::npos ||
                                   t.text.find('E') != std::string::npos)) ||
                      (is_hex && (t.text.find('p') != std::string::npos ||
                                  t.text.find('P') != std::string::npos));
      return std::make_unique<Expr>(is_float ? ExprKind::FloatLit : ExprKind::IntLit,
                                    l, t.text);
    }
    case TokenKind::String: {
      std::string text = t.text;
      ++pos_;
      while (peek().kind == TokenKind::String) {
        text += " " + peek().text;
        ++pos_;
      }
      return std::make_unique<Expr>(ExprKind::StrLit, l, text);
    }
    case TokenKind::Char:
      ++pos_;
      return std::make_unique<Expr>(ExprKind::CharLit, l, t.text);
    case TokenKind::Punct:
      if (t.text == "(") {
        if (is("{", 1))
          fail("unsupported construct: statement expression");
        ++pos_;
        auto e = parse_expr();
        expect(")");
        return e;
      }
      break;
    case TokenKind::End:
      fail("unexpected end of input");
    }
    fail("expected expression");
  }

  SourceUnit &unit_;
  std::vector<Token> toks_;
  Ast &ast_;
  size_t pos_ = 0;
  int depth_ = 0;
  std::vector<std::set<std::string>> scopes_;
};

bool calls_any(const Stmt &st, const std::set<std::string, std::less<>> &names);

bool expr_calls_any(const Expr &e,
                    const std::set<std::string, std::less<>> &names) {
  bool found = false;
  walk(e, [&](const Expr &x) {
    if (x.kind == ExprKind::Call && names.count(callee_name(x)))
      found = true;
  });
  return found;
}

bool calls_any(const Stmt &st, const std::set<std::string, std::less<>> &names) {
  if (st.expr && expr_calls_any(*st.expr, names))
    return true;
  if (st.step && expr_calls_any(*st.step, names))
    return true;
  for (const auto &d : st.decls)
    if (d.init && expr_calls_any(*d.init, names))
      return true;
  for (const auto &b : st.body)
    if (b && calls_any(*b, names))
      return true;
  for (const Stmt *s : {st.init.get(), st.then_s.get(), st.else_s.get()})
    if (s && calls_any(*s, names))
      return true;
  return false;
}

} // namespace

bool is_ta_entry_point(std::string_view name) {
  return name == "TA_InvokeCommandEntryPoint" || name == "TA_CreateEntryPoint" ||
         name == "TA_DestroyEntryPoint" || name == "TA_OpenSessionEntryPoint" ||
         name == "TA_CloseSessionEntryPoint";
}

UnitKind classify_unit(const Ast &ast) {
  for (const auto &f : ast.functions)
    if (is_ta_entry_point(f.name))
      return UnitKind::TA;
  static const std::set<std::string, std::less<>> client = {
      "TEEC_InvokeCommand", "TEEC_OpenSession", "TEEC_InitializeContext"};
  for (const auto &f : ast.functions)
    if (f.body && calls_any(*f.body, client))
      return UnitKind::CA;
  return UnitKind::Unknown;
}

Ast parse_source(const SourceUnit &raw, const FrontendOptions &options) {
  SourceUnit unit = preprocess(raw, options);
  Ast ast;
  ast.path = unit.path;
  ast.includes = unit.includes;
  ast.diagnostics = unit.diagnostics;
  for (char c : unit.original.empty() ? unit.text : unit.original)
    if (c == '\n')
      ++ast.line_count;
  if (!(unit.original.empty() ? unit.text : unit.original).empty())
    ++ast.line_count;

  std::vector<Token> toks = tokenize(unit);
  ast.diagnostics.insert(ast.diagnostics.end(),
                         unit.diagnostics.begin() + static_cast<long>(ast.diagnostics.size()),
                         unit.diagnostics.end());
  Parser parser(unit, std::move(toks), ast);
  parser.run();
  ast.kind = classify_unit(ast);
  return ast;
}

Ast parse_unit(const std::string &path, const FrontendOptions &options,
               const std::string &display_path) {
  std::string bytes = read_file(path);
  const std::string &name = display_path.empty() ? path : display_path;
  if (!is_valid_utf8(bytes))
    throw EncodingError("file is not valid UTF-8: " + name);
  return parse_source(SourceUnit::from_text(name, std::move(bytes)), options);
}

} // namespace partcheck
