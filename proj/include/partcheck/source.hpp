#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace partcheck {

/// A position in the original (pre-preprocessing) text of a file.
/// Lines and columns are 1-based; column counts bytes.
struct SourceLocation {
  std::string file;
  int line = 0;
  int column = 0;

  bool valid() const { return line > 0; }
  auto operator<=>(const SourceLocation &) const = default;
};

std::string to_string(const SourceLocation &loc);

struct Diagnostic {
  SourceLocation loc;
  std::string message;

  auto operator<=>(const Diagnostic &) const = default;
};

enum class UnitKind { TA, CA, Unknown };

const char *to_string(UnitKind kind);

/// One input file. `origin` maps each byte of `text` back to a byte offset
/// in `original`; it is empty while `text` is still the raw file contents.
struct SourceUnit {
  std::string path;
  std::string text;
  UnitKind kind = UnitKind::Unknown;

  std::string original;
  std::vector<uint32_t> origin;
  std::vector<std::string> includes;
  std::vector<Diagnostic> diagnostics;

  /// Location in the original file of byte `offset` of `text`.
  SourceLocation locate(size_t offset) const;

  static SourceUnit from_text(std::string path, std::string text);

private:
  mutable std::vector<size_t> line_starts;
  mutable size_t line_starts_for = 0;
};

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class EncodingError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class CorpusError : public Error {
public:
  using Error::Error;
};

class UsageError : public Error {
public:
  using Error::Error;
};

/// Reads a file as bytes. Throws IoError.
std::string read_file(const std::string &path);

/// True if `bytes` is well-formed UTF-8.
bool is_valid_utf8(std::string_view bytes);

} // namespace partcheck
