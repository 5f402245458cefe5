#include "partcheck/preprocess.hpp"

#include <cctype>
#include <cstdio>
#include <functional>
#include <set>
#include <vector>

namespace partcheck {
namespace {

constexpr int kMaxExpansionDepth = 32;

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Replaces comments with spaces; newlines inside block comments survive so
// the output has the same length and line structure as the input.
std::string strip_comments(const std::string &in, SourceUnit &unit) {
  std::string out = in;
  size_t i = 0;
  const size_t n = in.size();
  while (i < n) {
    char c = in[i];
    if (c == '"' || c == '\'') {
      char quote = c;
      ++i;
      while (i < n && in[i] != quote && in[i] != '\n') {
        if (in[i] == '\\' && i + 1 < n)
          ++i;
        ++i;
      }
      if (i < n && in[i] == quote)
        ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && in[i + 1] == '/') {
      while (i < n && in[i] != '\n')
        out[i++] = ' ';
      continue;
    }
    if (c == '/' && i + 1 < n && in[i + 1] == '*') {
      size_t start = i;
      out[i] = out[i + 1] = ' ';
      i += 2;
      bool closed = false;
      while (i < n) {
        if (in[i] == '*' && i + 1 < n && in[i + 1] == '/') {
          out[i] = out[i + 1] = ' ';
          i += 2;
          closed = true;
          break;
        }
        if (in[i] != '\n')
          out[i] = ' ';
        ++i;
      }
      if (!closed)
        unit.diagnostics.push_back(
            {unit.locate(start), "unterminated block comment"});
      continue;
    }
    ++i;
  }
  return out;
}

struct Directive {
  std::string name;
  std::string rest;
};

Directive split_directive(std::string_view line) {
  size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
    ++i;
  ++i; // '#'
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
    ++i;
  size_t name_start = i;
  while (i < line.size() && is_ident_char(line[i]))
    ++i;
  Directive d;
  d.name = std::string(line.substr(name_start, i - name_start));
  std::string rest(line.substr(i));
  size_t b = rest.find_first_not_of(" \t\r\n");
  size_t e = rest.find_last_not_of(" \t\r\n");
  d.rest = b == std::string::npos ? "" : rest.substr(b, e - b + 1);
  return d;
}

struct CondFrame {
  bool parent_active;
  bool active;
  bool taken; // some branch of this block has been kept
  bool literal; // `#if 0` / `#if 1`
};

class Preprocessor {
public:
  Preprocessor(SourceUnit &unit, const FrontendOptions &options)
      : unit_(unit), options_(options) {
    macros_ = builtin_macros();
    for (const auto &[k, v] : options.macros)
      macros_[k] = v;
  }

  // Blanks directive lines and inactive conditional regions in place.
  void handle_directives(std::string &text) {
    size_t pos = 0;
    std::vector<CondFrame> stack;
    auto active = [&] { return stack.empty() || stack.back().active; };
    while (pos < text.size()) {
      size_t eol = text.find('\n', pos);
      if (eol == std::string::npos)
        eol = text.size();
      size_t first = text.find_first_not_of(" \t\r", pos);
      bool is_directive = first != std::string::npos && first < eol &&
                          text[first] == '#';
      size_t end = eol;
      if (is_directive) {
        // Logical line: follow backslash continuations.
        while (end < text.size()) {
          size_t last = end;
          while (last > pos && (text[last - 1] == '\r'))
            --last;
          if (last > pos && text[last - 1] == '\\') {
            size_t next = text.find('\n', end + 1);
            end = next == std::string::npos ? text.size() : next;
          } else {
            break;
          }
        }
        std::string logical;
        for (size_t i = pos; i < end; ++i) {
          if (text[i] == '\\' && i + 1 < end &&
              (text[i + 1] == '\n' || text[i + 1] == '\r'))
            continue;
          if (text[i] == '\n' || text[i] == '\r')
            logical += ' ';
          else
            logical += text[i];
        }
        directive(split_directive(logical), stack, pos);
        blank(text, pos, end);
      } else if (!active()) {
        blank(text, pos, end);
      }
      pos = end + 1;
    }
    if (!stack.empty())
      unit_.diagnostics.push_back(
          {unit_.locate(text.size()), "unterminated conditional directive"});
  }

  void expand_unit(const std::string &text, std::string &out,
                   std::vector<uint32_t> &origin) {
    std::set<std::string> active;
    expand(text, [](size_t i) { return static_cast<uint32_t>(i); }, out,
           &origin, active, 0);
  }

private:
  static void blank(std::string &text, size_t from, size_t to) {
    for (size_t i = from; i < to && i < text.size(); ++i)
      if (text[i] != '\n')
        text[i] = ' ';
  }

  void directive(const Directive &d, std::vector<CondFrame> &stack,
                 size_t offset) {
    bool active = stack.empty() || stack.back().active;
    const bool keep_if = options_.conditional == ConditionalPolicy::KeepIf;
    if (d.name == "if" || d.name == "ifdef" || d.name == "ifndef") {
      CondFrame f{active, false, false, false};
      if (d.name == "if" && (d.rest == "0" || d.rest == "1")) {
        f.literal = true;
        f.active = active && d.rest == "1";
      } else {
        f.active = active && keep_if;
      }
      f.taken = f.active;
      stack.push_back(f);
    } else if (d.name == "elif" || d.name == "else") {
      if (stack.empty())
        return stray(d, offset);
      auto &f = stack.back();
      // KeepIf keeps the first branch still untaken; KeepElse keeps only the
      // final #else of a non-literal block.
      bool take = f.parent_active && !f.taken && (d.name == "else" || keep_if);
      f.active = take;
      f.taken = f.taken || take;
    } else if (d.name == "endif") {
      if (stack.empty())
        return stray(d, offset);
      stack.pop_back();
    } else if (!active) {
      return;
    } else if (d.name == "include") {
      unit_.includes.push_back(d.rest);
    } else if (d.name == "define") {
      define(d.rest);
    } else if (d.name == "undef") {
      macros_.erase(d.rest);
    } else if (d.name.empty() || d.name == "pragma" || d.name == "error" ||
               d.name == "warning" || d.name == "line") {
      // dropped
    } else {
      unit_.diagnostics.push_back(
          {unit_.locate(offset), "unknown directive #" + d.name});
    }
  }

  void stray(const Directive &d, size_t offset) {
    unit_.diagnostics.push_back(
        {unit_.locate(offset), "#" + d.name + " without matching #if"});
  }

  void define(const std::string &rest) {
    size_t i = 0;
    while (i < rest.size() && is_ident_char(rest[i]))
      ++i;
    if (i == 0)
      return;
    std::string name = rest.substr(0, i);
    // Function-like user macros are not expanded; calls to them parse as
    // ordinary calls.
    if (i < rest.size() && rest[i] == '(')
      return;
    std::string value = rest.substr(i);
    size_t b = value.find_first_not_of(" \t");
    value = b == std::string::npos ? "" : value.substr(b);
    macros_[name] = value;
  }

  using OriginFn = std::function<uint32_t(size_t)>;

  void expand(std::string_view in, const OriginFn &orig, std::string &out,
              std::vector<uint32_t> *origin, std::set<std::string> &active,
              int depth) {
    auto emit = [&](char c, uint32_t o) {
      out += c;
      if (origin)
        origin->push_back(o);
    };
    size_t i = 0;
    const size_t n = in.size();
    while (i < n) {
      char c = in[i];
      if (c == '"' || c == '\'') {
        char quote = c;
        emit(c, orig(i++));
        while (i < n && in[i] != quote && in[i] != '\n') {
          if (in[i] == '\\' && i + 1 < n)
            emit(in[i], orig(i)), ++i;
          emit(in[i], orig(i));
          ++i;
        }
        if (i < n && in[i] == quote)
          emit(in[i], orig(i)), ++i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        while (i < n && (is_ident_char(in[i]) || in[i] == '.'))
          emit(in[i], orig(i)), ++i;
        continue;
      }
      if (!is_ident_start(c)) {
        emit(c, orig(i++));
        continue;
      }
      size_t start = i;
      while (i < n && is_ident_char(in[i]))
        ++i;
      std::string name(in.substr(start, i - start));
      uint32_t at = orig(start);

      if (depth < kMaxExpansionDepth && !active.count(name)) {
        if (auto packed = try_function_like(name, in, i, active, depth)) {
          for (char pc : packed->text)
            emit(pc, at);
          // Keep the line count of multi-line invocations.
          for (size_t k = start; k < packed->end; ++k)
            if (in[k] == '\n')
              emit('\n', orig(k));
          i = packed->end;
          continue;
        }
        auto it = macros_.find(name);
        if (it != macros_.end()) {
          active.insert(name);
          std::string expanded;
          expand(it->second, [at](size_t) { return at; }, expanded, nullptr,
                 active, depth + 1);
          active.erase(name);
          for (char ec : expanded)
            emit(ec, at);
          continue;
        }
      }
      for (size_t k = start; k < i; ++k)
        emit(in[k], orig(k));
    }
  }

  struct Packed {
    std::string text;
    size_t end;
  };

  std::optional<Packed> try_function_like(const std::string &name,
                                          std::string_view in, size_t pos,
                                          std::set<std::string> &active,
                                          int depth) {
    bool pack = name == "TEE_PARAM_TYPES" || name == "TEEC_PARAM_TYPES";
    bool get = name == "TEE_PARAM_TYPE_GET";
    if (!pack && !get)
      return std::nullopt;
    size_t i = pos;
    while (i < in.size() && std::isspace(static_cast<unsigned char>(in[i])))
      ++i;
    if (i >= in.size() || in[i] != '(')
      return std::nullopt;
    ++i;
    std::vector<std::string> args(1);
    int nest = 0;
    for (; i < in.size(); ++i) {
      char c = in[i];
      if (c == '(') {
        ++nest;
      } else if (c == ')') {
        if (nest == 0)
          break;
        --nest;
      } else if (c == ',' && nest == 0) {
        args.emplace_back();
        continue;
      }
      args.back() += c == '\n' ? ' ' : c;
    }
    if (i >= in.size())
      return std::nullopt;
    size_t end = i + 1;

    std::vector<std::string> expanded;
    for (const auto &a : args) {
      std::string e;
      expand(a, [](size_t) { return 0u; }, e, nullptr, active, depth + 1);
      expanded.push_back(e);
    }
    if (pack) {
      if (expanded.size() != 4)
        return std::nullopt;
      unsigned long long value = 0;
      for (size_t k = 0; k < 4; ++k) {
        auto v = eval_constant(expanded[k]);
        if (!v || *v < 0 || *v > 0xF)
          return std::nullopt;
        value |= static_cast<unsigned long long>(*v) << (4 * k);
      }
      char buf[16];
      std::snprintf(buf, sizeof buf, "0x%04llX", value);
      return Packed{buf, end};
    }
    if (expanded.size() != 2)
      return std::nullopt;
    return Packed{"(((" + expanded[0] + ") >> ((" + expanded[1] +
                      ") * 4)) & 0xF)",
                  end};
  }

  SourceUnit &unit_;
  const FrontendOptions &options_;
  std::map<std::string, std::string> macros_;
};

// Recursive-descent evaluator for eval_constant.
class ConstEval {
public:
  explicit ConstEval(std::string_view s) : s_(s) {}

  std::optional<long long> run() {
    auto v = parse_binary(0);
    skip_ws();
    if (!v || pos_ != s_.size())
      return std::nullopt;
    return v;
  }

private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  static int precedence(std::string_view op) {
    if (op == "||")
      return 1;
    if (op == "&&")
      return 2;
    if (op == "|")
      return 3;
    if (op == "^")
      return 4;
    if (op == "&")
      return 5;
    if (op == "==" || op == "!=")
      return 6;
    if (op == "<" || op == ">" || op == "<=" || op == ">=")
      return 7;
    if (op == "<<" || op == ">>")
      return 8;
    if (op == "+" || op == "-")
      return 9;
    if (op == "*" || op == "/" || op == "%")
      return 10;
    return -1;
  }

  std::string_view peek_op() {
    skip_ws();
    static const char *ops[] = {"||", "&&", "<<", ">>", "<=", ">=", "==",
                                "!=", "|",  "^",  "&",  "<",  ">",  "+",
                                "-",  "*",  "/",  "%"};
    for (const char *op : ops) {
      std::string_view v(op);
      if (s_.substr(pos_, v.size()) == v)
        return v;
    }
    return {};
  }

  std::optional<long long> parse_binary(int min_prec) {
    if (++depth_ > 64)
      return std::nullopt;
    auto lhs = parse_unary();
    while (lhs) {
      auto op = peek_op();
      int prec = op.empty() ? -1 : precedence(op);
      if (prec < 0 || prec < min_prec)
        break;
      pos_ += op.size();
      auto rhs = parse_binary(prec + 1);
      if (!rhs)
        return std::nullopt;
      lhs = apply(op, *lhs, *rhs);
    }
    --depth_;
    return lhs;
  }

  static std::optional<long long> apply(std::string_view op, long long a,
                                        long long b) {
    if (op == "||")
      return (a || b) ? 1 : 0;
    if (op == "&&")
      return (a && b) ? 1 : 0;
    if (op == "|")
      return a | b;
    if (op == "^")
      return a ^ b;
    if (op == "&")
      return a & b;
    if (op == "==")
      return a == b;
    if (op == "!=")
      return a != b;
    if (op == "<")
      return a < b;
    if (op == ">")
      return a > b;
    if (op == "<=")
      return a <= b;
    if (op == ">=")
      return a >= b;
    if (op == "<<" || op == ">>") {
      if (b < 0 || b > 62)
        return std::nullopt;
      return op == "<<" ? static_cast<long long>(static_cast<unsigned long long>(a) << b)
                        : a >> b;
    }
    if (op == "+")
      return a + b;
    if (op == "-")
      return a - b;
    if (op == "*")
      return a * b;
    if (op == "/" || op == "%") {
      if (b == 0)
        return std::nullopt;
      return op == "/" ? a / b : a % b;
    }
    return std::nullopt;
  }

  std::optional<long long> parse_unary() {
    skip_ws();
    if (pos_ >= s_.size())
      return std::nullopt;
    char c = s_[pos_];
    if (c == '-' || c == '+' || c == '~' || c == '!') {
      ++pos_;
      auto v = parse_unary();
      if (!v)
        return std::nullopt;
      switch (c) {
      case '-':
        return -*v;
      case '~':
        return ~*v;
      case '!':
        return *v ? 0 : 1;
      default:
        return v;
      }
    }
    if (c == '(') {
      ++pos_;
      auto v = parse_binary(0);
      skip_ws();
      if (!v || pos_ >= s_.size() || s_[pos_] != ')')
        return std::nullopt;
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return parse_number();
    return std::nullopt;
  }

  std::optional<long long> parse_number() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    std::string tok(s_.substr(start, pos_ - start));
    while (!tok.empty() && (tok.back() == 'u' || tok.back() == 'U' ||
                            tok.back() == 'l' || tok.back() == 'L'))
      tok.pop_back();
    if (tok.empty())
      return std::nullopt;
    int base = 10;
    size_t digits = 0;
    if (tok.size() > 1 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) {
      base = 16;
      digits = 2;
    } else if (tok.size() > 1 && tok[0] == '0') {
      base = 8;
      digits = 1;
    }
    if (digits >= tok.size())
      return std::nullopt;
    unsigned long long v = 0;
    for (size_t k = digits; k < tok.size(); ++k) {
      int d;
      char ch = tok[k];
      if (ch >= '0' && ch <= '9')
        d = ch - '0';
      else if (ch >= 'a' && ch <= 'f')
        d = ch - 'a' + 10;
      else if (ch >= 'A' && ch <= 'F')
        d = ch - 'A' + 10;
      else
        return std::nullopt;
      if (d >= base)
        return std::nullopt;
      if (v > (~0ULL >> 5))
        return std::nullopt;
      v = v * base + d;
    }
    return static_cast<long long>(v);
  }

  std::string_view s_;
  size_t pos_ = 0;
  int depth_ = 0;
};

} // namespace

const std::map<std::string, std::string> &builtin_macros() {
  static const std::map<std::string, std::string> table = {
      {"TEE_NUM_PARAMS", "4"},
      {"TEE_PARAM_TYPE_NONE", "0"},
      {"TEE_PARAM_TYPE_VALUE_INPUT", "1"},
      {"TEE_PARAM_TYPE_VALUE_OUTPUT", "2"},
      {"TEE_PARAM_TYPE_VALUE_INOUT", "3"},
      {"TEE_PARAM_TYPE_MEMREF_INPUT", "5"},
      {"TEE_PARAM_TYPE_MEMREF_OUTPUT", "6"},
      {"TEE_PARAM_TYPE_MEMREF_INOUT", "7"},
      {"TEEC_NONE", "0x00000000"},
      {"TEEC_VALUE_INPUT", "0x00000001"},
      {"TEEC_VALUE_OUTPUT", "0x00000002"},
      {"TEEC_VALUE_INOUT", "0x00000003"},
      {"TEEC_MEMREF_TEMP_INPUT", "0x00000005"},
      {"TEEC_MEMREF_TEMP_OUTPUT", "0x00000006"},
      {"TEEC_MEMREF_TEMP_INOUT", "0x00000007"},
      {"TEEC_MEMREF_WHOLE", "0x0000000C"},
      {"TEEC_MEMREF_PARTIAL_INPUT", "0x0000000D"},
      {"TEEC_MEMREF_PARTIAL_OUTPUT", "0x0000000E"},
      {"TEEC_MEMREF_PARTIAL_INOUT", "0x0000000F"},
  };
  return table;
}

std::optional<long long> eval_constant(std::string_view expr) {
  return ConstEval(expr).run();
}

SourceUnit preprocess(const SourceUnit &unit, const FrontendOptions &options) {
  SourceUnit out;
  out.path = unit.path;
  out.kind = unit.kind;
  out.original = unit.origin.empty() ? unit.text : unit.original;
  out.includes = unit.includes;
  out.diagnostics = unit.diagnostics;

  // Diagnostics raised below locate against the original text.
  SourceUnit scratch = SourceUnit::from_text(unit.path, out.original);
  std::string stage = strip_comments(out.original, scratch);
  Preprocessor pp(scratch, options);
  pp.handle_directives(stage);
  pp.expand_unit(stage, out.text, out.origin);

  out.includes.insert(out.includes.end(), scratch.includes.begin(),
                      scratch.includes.end());
  out.diagnostics.insert(out.diagnostics.end(), scratch.diagnostics.begin(),
                         scratch.diagnostics.end());
  // An unchanged unit needs no origin map.
  if (out.text == out.original)
    out.origin.clear();
  return out;
}

} // namespace partcheck
