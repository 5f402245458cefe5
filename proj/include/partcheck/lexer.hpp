#pragma once

#include "partcheck/source.hpp"

#include <string>
#include <vector>

namespace partcheck {

enum class TokenKind { Ident, Number, String, Char, Punct, End };

struct Token {
  TokenKind kind;
  std::string text;
  size_t offset; // into the preprocessed text
};

/// Splits preprocessed text into tokens. Bytes that start no token are
/// reported in `unit.diagnostics` and dropped. The result always ends with
/// an End token.
std::vector<Token> tokenize(SourceUnit &unit);

} // namespace partcheck
