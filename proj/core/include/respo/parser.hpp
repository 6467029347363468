#pragma once

#include <string_view>

#include "respo/program.hpp"

namespace respo {

// Parses and validates a full program. Syntax errors carry line and column.
Program parse_program(std::string_view source);

// Parses a boolean expression on its own (CLI --property text). The result is
// unresolved; callers resolve it against a program's variable table.
BoolPtr parse_bool_expr(std::string_view source);

}  // namespace respo
