#include "partcheck/source.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace partcheck {

std::string to_string(const SourceLocation &loc) {
  return loc.file + ":" + std::to_string(loc.line) + ":" +
         std::to_string(loc.column);
}

const char *to_string(UnitKind kind) {
  switch (kind) {
  case UnitKind::TA:
    return "TA";
  case UnitKind::CA:
    return "CA";
  case UnitKind::Unknown:
    break;
  }
  return "Unknown";
}

SourceLocation SourceUnit::locate(size_t offset) const {
  size_t orig_offset = offset;
  if (!origin.empty()) {
    orig_offset = offset < origin.size() ? origin[offset]
                                         : static_cast<size_t>(original.size());
  }
  const std::string &base = origin.empty() ? text : original;
  orig_offset = std::min(orig_offset, base.size());
  if (line_starts.empty() || line_starts_for != base.size()) {
    line_starts.assign(1, 0);
    for (size_t i = 0; i < base.size(); ++i)
      if (base[i] == '\n')
        line_starts.push_back(i + 1);
    line_starts_for = base.size();
  }
  auto it = std::upper_bound(line_starts.begin(), line_starts.end(), orig_offset);
  size_t line_index = static_cast<size_t>(it - line_starts.begin()) - 1;
  return {path, static_cast<int>(line_index) + 1,
          static_cast<int>(orig_offset - line_starts[line_index]) + 1};
}

SourceUnit SourceUnit::from_text(std::string path, std::string text) {
  SourceUnit unit;
  unit.path = std::move(path);
  unit.text = std::move(text);
  return unit;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad())
    throw IoError("error while reading file: " + path);
  return ss.str();
}

bool is_valid_utf8(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    size_t extra = 0;
    uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= s.size())
      return false;
    for (size_t k = 1; k <= extra; ++k) {
      auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80)
        return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings and surrogates.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) ||
        (extra == 3 && (cp < 0x10000 || cp > 0x10FFFF)) ||
        (cp >= 0xD800 && cp <= 0xDFFF))
      return false;
    i += extra + 1;
  }
  return true;
}

} // namespace partcheck
