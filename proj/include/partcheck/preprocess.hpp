#pragma once

#include "partcheck/source.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace partcheck {

/// Which branch of a conditional-compilation block survives preprocessing.
/// `#if 0` / `#if 1` are always honoured literally.
enum class ConditionalPolicy { KeepIf, KeepElse };

struct FrontendOptions {
  /// Object-like macro additions (name -> replacement text).
  std::map<std::string, std::string> macros;
  ConditionalPolicy conditional = ConditionalPolicy::KeepIf;
};

/// GlobalPlatform parameter-type nibble values (TEE_PARAM_TYPE_* / TEEC_*).
namespace param_type {
inline constexpr unsigned None = 0x0;
inline constexpr unsigned ValueInput = 0x1;
inline constexpr unsigned ValueOutput = 0x2;
inline constexpr unsigned ValueInout = 0x3;
inline constexpr unsigned MemrefInput = 0x5;
inline constexpr unsigned MemrefOutput = 0x6;
inline constexpr unsigned MemrefInout = 0x7;
inline constexpr unsigned MemrefWhole = 0xC;
inline constexpr unsigned MemrefPartialInput = 0xD;
inline constexpr unsigned MemrefPartialOutput = 0xE;
inline constexpr unsigned MemrefPartialInout = 0xF;
} // namespace param_type

/// The built-in object-like constants (GlobalPlatform parameter types).
const std::map<std::string, std::string> &builtin_macros();

/// Evaluates a C integer constant expression made of literals, parentheses
/// and the usual arithmetic/bitwise operators. Returns nullopt on anything
/// else (identifiers, calls, overflow in shifts).
std::optional<long long> eval_constant(std::string_view expr);

/// Strips comments, handles directives, and expands the built-in macro table
/// plus object-like `#define`s found in the unit. Line structure is kept and
/// `origin` maps every output byte to the original text. Never throws.
SourceUnit preprocess(const SourceUnit &unit, const FrontendOptions &options);

} // namespace partcheck
