#include "partcheck/lexer.hpp"

#include <array>
#include <cctype>
#include <string_view>

namespace partcheck {
namespace {

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

constexpr std::array<std::string_view, 24> kMultiPunct = {
    "...", "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",  "||",  "+=",  "-=", "*=", "/=", "%=", "&=", "^=", "|=", "##", "::"};

constexpr std::string_view kSinglePunct = "{}[]()<>;:,.?+-*/%&|^!~=#";

} // namespace

std::vector<Token> tokenize(SourceUnit &unit) {
  const std::string &s = unit.text;
  std::vector<Token> out;
  size_t i = 0;
  const size_t n = s.size();
  size_t bad_run_start = std::string::npos;
  auto flush_bad = [&](size_t end) {
    if (bad_run_start == std::string::npos)
      return;
    unit.diagnostics.push_back(
        {unit.locate(bad_run_start),
         "skipped " + std::to_string(end - bad_run_start) +
             " unrecognized byte(s)"});
    bad_run_start = std::string::npos;
  };

  while (i < n) {
    auto c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c) || c == '\\') {
      flush_bad(i);
      ++i;
      continue;
    }
    size_t start = i;
    // String/char literals with optional encoding prefix.
    size_t prefix = 0;
    if (c == 'L' || c == 'u' || c == 'U') {
      size_t k = i + 1;
      if (c == 'u' && k < n && s[k] == '8')
        ++k;
      if (k < n && (s[k] == '"' || s[k] == '\''))
        prefix = k - i;
    }
    char q = s[i + prefix < n ? i + prefix : i];
    if ((prefix || c == '"' || c == '\'') && (q == '"' || q == '\'')) {
      flush_bad(i);
      i += prefix + 1;
      while (i < n && s[i] != q && s[i] != '\n') {
        if (s[i] == '\\' && i + 1 < n)
          ++i;
        ++i;
      }
      if (i < n && s[i] == q) {
        ++i;
      } else {
        unit.diagnostics.push_back({unit.locate(start), "unterminated literal"});
      }
      out.push_back({q == '"' ? TokenKind::String : TokenKind::Char,
                     s.substr(start, i - start), start});
      continue;
    }
    if (ident_start(c)) {
      flush_bad(i);
      while (i < n && ident_char(static_cast<unsigned char>(s[i])))
        ++i;
      out.push_back({TokenKind::Ident, s.substr(start, i - start), start});
      continue;
    }
    if (std::isdigit(c) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      flush_bad(i);
      while (i < n) {
        auto d = static_cast<unsigned char>(s[i]);
        if (ident_char(d) || d == '.') {
          ++i;
        } else if ((d == '+' || d == '-') && i > start &&
                   (s[i - 1] == 'e' || s[i - 1] == 'E' || s[i - 1] == 'p' ||
                    s[i - 1] == 'P') &&
                   !(s[start] == '0' && start + 1 < n &&
                     (s[start + 1] == 'x' || s[start + 1] == 'X') &&
                     (s[i - 1] == 'e' || s[i - 1] == 'E'))) {
          ++i;
        } else {
          break;
        }
      }
      out.push_back({TokenKind::Number, s.substr(start, i - start), start});
      continue;
    }
    bool matched = false;
    for (auto p : kMultiPunct) {
      if (std::string_view(s).substr(i, p.size()) == p) {
        flush_bad(i);
        out.push_back({TokenKind::Punct, std::string(p), start});
        i += p.size();
        matched = true;
        break;
      }
    }
    if (matched)
      continue;
    if (kSinglePunct.find(static_cast<char>(c)) != std::string_view::npos) {
      flush_bad(i);
      out.push_back({TokenKind::Punct, std::string(1, static_cast<char>(c)), start});
      ++i;
      continue;
    }
    if (bad_run_start == std::string::npos)
      bad_run_start = i;
    ++i;
  }
  flush_bad(n);
  out.push_back({TokenKind::End, "", n});
  return out;
}

} // namespace partcheck
