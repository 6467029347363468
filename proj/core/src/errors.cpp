#include "respo/errors.hpp"

namespace respo {

namespace {

std::string decorate(ErrorKind kind, const std::string& message, int line, int column) {
  std::string out = error_kind_name(kind);
  out += ": ";
  out += message;
  if (line > 0) {
    out += " (line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    out += ")";
  }
  return out;
}

}  // namespace

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax: return "syntax error";
    case ErrorKind::undeclared_variable: return "undeclared variable";
    case ErrorKind::unknown_variable: return "unknown variable";
    case ErrorKind::cross_module_assignment: return "cross-module assignment";
    case ErrorKind::duplicate_variable: return "duplicate variable";
    case ErrorKind::init_out_of_range: return "initial value out of range";
    case ErrorKind::name_clash: return "name clash";
    case ErrorKind::division_by_zero: return "division by zero";
    case ErrorKind::update_out_of_range: return "update out of range";
    case ErrorKind::state_space_exceeded: return "state space cap exceeded";
    case ErrorKind::too_many_actors: return "too many actors";
    case ErrorKind::invalid_counterexample: return "invalid counterexample";
    case ErrorKind::invalid_signature: return "invalid signature";
    case ErrorKind::format: return "format error";
    case ErrorKind::io: return "io error";
    case ErrorKind::usage: return "usage error";
  }
  return "error";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::state_space_exceeded:
    case ErrorKind::too_many_actors:
      return 3;
    default:
      return 2;
  }
}

Error::Error(ErrorKind kind, const std::string& message, int line, int column)
    : std::runtime_error(decorate(kind, message, line, column)),
      kind(kind),
      line(line),
      column(column) {}

void fail(ErrorKind kind, const std::string& message, int line, int column) {
  throw Error(kind, message, line, column);
}

}  // namespace respo
