#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "respo/lts.hpp"
#include "respo/signature.hpp"

namespace respo {

// Line-oriented exchange format:
//   ts v1 states=<n> init=<i>
//   bad <i> ...
//   edge <src> <dst> <action>
//   actor <name> <i> ...
//   aux <i> ...
//   adv <i> ...
// The bad line is always present (possibly bare); actor/aux/adv lines appear
// only when a signature is attached. '#' starts a comment line.
void export_ts(const Lts& lts, const ResponsibilitySignature* sig, std::ostream& out);
std::string export_ts_string(const Lts& lts, const ResponsibilitySignature* sig);

struct ImportedTs {
  Lts lts;
  std::optional<ResponsibilitySignature> signature;  // validated when present
};

// Parses and normalizes (absorbing bad states, self-loop completion). Raises
// Error(format) with the offending line number.
ImportedTs import_ts(std::istream& in);
ImportedTs import_ts_string(const std::string& text);

// Counterexample files hold one state per line. For program-backed systems a
// state is written as var=value pairs joined by '&' in declaration order and
// parsed leniently (any order, every variable exactly once); for systems
// without variables each line is a state index.
Counterexample read_counterexample(const Lts& lts, std::istream& in);
void write_counterexample(const Lts& lts, const Counterexample& cex, std::ostream& out);

// Manual signatures for program-backed systems: one class per line,
//   <actor-name>: <bool-expr>
// with the reserved names `aux` and `adv` for the special classes. Every
// state must satisfy exactly one left-hand side.
ResponsibilitySignature read_manual_signature(const Lts& lts, std::istream& in);

}  // namespace respo
