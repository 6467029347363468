#pragma once

#include <stdexcept>
#include <string>

namespace respo {

enum class ErrorKind {
  syntax,
  undeclared_variable,
  unknown_variable,
  cross_module_assignment,
  duplicate_variable,
  init_out_of_range,
  name_clash,
  division_by_zero,
  update_out_of_range,
  state_space_exceeded,
  too_many_actors,
  invalid_counterexample,
  invalid_signature,
  format,
  io,
  usage,
};

const char* error_kind_name(ErrorKind kind);

// 3 = a resource cap was hit, 2 = the input or invocation is invalid.
int exit_code_for(ErrorKind kind);

struct Error : std::runtime_error {
  ErrorKind kind;
  int line;  // 1-based, 0 when unknown
  int column;

  Error(ErrorKind kind, const std::string& message, int line = 0, int column = 0);
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message, int line = 0,
                       int column = 0);

}  // namespace respo
