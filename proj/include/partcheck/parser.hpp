#pragma once

#include "partcheck/ast.hpp"
#include "partcheck/preprocess.hpp"

#include <string>

namespace partcheck {

/// Preprocesses, tokenizes and parses a unit. Total: any byte sequence
/// yields an Ast; unsupported or malformed constructs are skipped one
/// statement (or external declaration) at a time with a diagnostic.
Ast parse_source(const SourceUnit &unit, const FrontendOptions &options);

/// Reads `path` and parses it. `display_path` (if non-empty) is the name
/// recorded in locations. Throws IoError, EncodingError (non-UTF-8 input).
Ast parse_unit(const std::string &path, const FrontendOptions &options,
               const std::string &display_path = {});

/// TA if the unit defines a GlobalPlatform TA entry point, CA if it calls a
/// client-API session/invocation function, Unknown otherwise.
UnitKind classify_unit(const Ast &ast);

bool is_ta_entry_point(std::string_view name);

} // namespace partcheck
