#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace respo {

struct SourcePos {
  int line = 0;
  int column = 0;
};

enum class ArithOp { add, sub, mul, div, mod };
enum class CmpOp { eq, ne, lt, le, ge, gt };
enum class BoolOp { conj, disj, iff };

struct ArithExpr;
struct BoolExpr;
using ArithPtr = std::shared_ptr<const ArithExpr>;
using BoolPtr = std::shared_ptr<const BoolExpr>;

// Trees are immutable after Program::validate resolves variable ids; they can
// be shared freely between threads.
struct ArithExpr {
  enum class Kind { constant, variable, binary, negate };
  Kind kind;
  long long value = 0;         // constant
  std::string var;             // variable
  mutable int var_id = -1;     // filled in once by resolution
  ArithOp op = ArithOp::add;   // binary
  ArithPtr lhs, rhs;           // binary; negate uses lhs only
  SourcePos pos;

  static ArithPtr constant(long long v, SourcePos p = {});
  static ArithPtr variable(std::string name, SourcePos p = {});
  static ArithPtr binary(ArithOp op, ArithPtr l, ArithPtr r, SourcePos p = {});
  static ArithPtr negate(ArithPtr e, SourcePos p = {});
};

struct BoolExpr {
  enum class Kind { constant, negation, binary, comparison };
  Kind kind;
  bool value = false;          // constant
  BoolPtr child;               // negation
  BoolOp op = BoolOp::conj;    // binary
  BoolPtr blhs, brhs;          // binary
  CmpOp cmp = CmpOp::eq;       // comparison
  ArithPtr alhs, arhs;         // comparison
  SourcePos pos;

  static BoolPtr constant(bool v, SourcePos p = {});
  static BoolPtr negation(BoolPtr e, SourcePos p = {});
  static BoolPtr binary(BoolOp op, BoolPtr l, BoolPtr r, SourcePos p = {});
  static BoolPtr comparison(CmpOp op, ArithPtr l, ArithPtr r, SourcePos p = {});
};

// Evaluation over a state vector indexed by resolved variable ids. Division
// truncates toward zero and mod takes the dividend's sign (C++ semantics);
// division or mod by zero raises Error(division_by_zero).
long long eval_arith(const ArithExpr& e, std::span<const long long> state);
bool eval_bool(const BoolExpr& e, std::span<const long long> state);

// Precedence-aware printing; parsing the result yields an equal tree.
std::string to_string(const ArithExpr& e);
std::string to_string(const BoolExpr& e);

// Structural equality (positions ignored).
bool equal(const ArithExpr& a, const ArithExpr& b);
bool equal(const BoolExpr& a, const BoolExpr& b);

// Fills var_id for every variable occurrence; names map to indices via lookup.
// Unknown names raise Error(undeclared_variable) carrying the occurrence position.
class VarTable;
void resolve_vars(const ArithExpr& e, const VarTable& vars);
void resolve_vars(const BoolExpr& e, const VarTable& vars);

void collect_vars(const ArithExpr& e, std::vector<std::string>& out);
void collect_vars(const BoolExpr& e, std::vector<std::string>& out);

}  // namespace respo
