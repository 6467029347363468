#include "respo/expr.hpp"

#include "respo/errors.hpp"
#include "respo/program.hpp"

namespace respo {

ArithPtr ArithExpr::constant(long long v, SourcePos p) {
  auto e = std::make_shared<ArithExpr>();
  e->kind = Kind::constant;
  e->value = v;
  e->pos = p;
  return e;
}

ArithPtr ArithExpr::variable(std::string name, SourcePos p) {
  auto e = std::make_shared<ArithExpr>();
  e->kind = Kind::variable;
  e->var = std::move(name);
  e->pos = p;
  return e;
}

ArithPtr ArithExpr::binary(ArithOp op, ArithPtr l, ArithPtr r, SourcePos p) {
  auto e = std::make_shared<ArithExpr>();
  e->kind = Kind::binary;
  e->op = op;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  e->pos = p;
  return e;
}

ArithPtr ArithExpr::negate(ArithPtr inner, SourcePos p) {
  auto e = std::make_shared<ArithExpr>();
  e->kind = Kind::negate;
  e->lhs = std::move(inner);
  e->pos = p;
  return e;
}

BoolPtr BoolExpr::constant(bool v, SourcePos p) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = Kind::constant;
  e->value = v;
  e->pos = p;
  return e;
}

BoolPtr BoolExpr::negation(BoolPtr inner, SourcePos p) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = Kind::negation;
  e->child = std::move(inner);
  e->pos = p;
  return e;
}

BoolPtr BoolExpr::binary(BoolOp op, BoolPtr l, BoolPtr r, SourcePos p) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = Kind::binary;
  e->op = op;
  e->blhs = std::move(l);
  e->brhs = std::move(r);
  e->pos = p;
  return e;
}

BoolPtr BoolExpr::comparison(CmpOp op, ArithPtr l, ArithPtr r, SourcePos p) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = Kind::comparison;
  e->cmp = op;
  e->alhs = std::move(l);
  e->arhs = std::move(r);
  e->pos = p;
  return e;
}

long long eval_arith(const ArithExpr& e, std::span<const long long> state) {
  switch (e.kind) {
    case ArithExpr::Kind::constant:
      return e.value;
    case ArithExpr::Kind::variable:
      return state[static_cast<size_t>(e.var_id)];
    case ArithExpr::Kind::negate:
      return -eval_arith(*e.lhs, state);
    case ArithExpr::Kind::binary: {
      long long l = eval_arith(*e.lhs, state);
      long long r = eval_arith(*e.rhs, state);
      switch (e.op) {
        case ArithOp::add: return l + r;
        case ArithOp::sub: return l - r;
        case ArithOp::mul: return l * r;
        case ArithOp::div:
          if (r == 0)
            fail(ErrorKind::division_by_zero, "division by zero", e.pos.line, e.pos.column);
          return l / r;  // truncates toward zero
        case ArithOp::mod:
          if (r == 0)
            fail(ErrorKind::division_by_zero, "mod by zero", e.pos.line, e.pos.column);
          return l % r;  // sign of the dividend
      }
      break;
    }
  }
  fail(ErrorKind::syntax, "malformed arithmetic expression");
}

bool eval_bool(const BoolExpr& e, std::span<const long long> state) {
  switch (e.kind) {
    case BoolExpr::Kind::constant:
      return e.value;
    case BoolExpr::Kind::negation:
      return !eval_bool(*e.child, state);
    case BoolExpr::Kind::binary: {
      bool l = eval_bool(*e.blhs, state);
      bool r = eval_bool(*e.brhs, state);
      switch (e.op) {
        case BoolOp::conj: return l && r;
        case BoolOp::disj: return l || r;
        case BoolOp::iff: return l == r;
      }
      break;
    }
    case BoolExpr::Kind::comparison: {
      long long l = eval_arith(*e.alhs, state);
      long long r = eval_arith(*e.arhs, state);
      switch (e.cmp) {
        case CmpOp::eq: return l == r;
        case CmpOp::ne: return l != r;
        case CmpOp::lt: return l < r;
        case CmpOp::le: return l <= r;
        case CmpOp::ge: return l >= r;
        case CmpOp::gt: return l > r;
      }
      break;
    }
  }
  fail(ErrorKind::syntax, "malformed boolean expression");
}

namespace {

// Precedence levels, loose to tight.
int aprec(const ArithExpr& e) {
  switch (e.kind) {
    case ArithExpr::Kind::binary:
      return (e.op == ArithOp::add || e.op == ArithOp::sub) ? 1 : 2;
    case ArithExpr::Kind::negate:
      return 3;
    default:
      return 4;
  }
}

int bprec(const BoolExpr& e) {
  switch (e.kind) {
    case BoolExpr::Kind::binary:
      switch (e.op) {
        case BoolOp::iff: return 1;
        case BoolOp::disj: return 2;
        case BoolOp::conj: return 3;
      }
      return 1;
    case BoolExpr::Kind::negation:
      return 4;
    default:
      return 5;
  }
}

const char* arith_op_token(ArithOp op) {
  switch (op) {
    case ArithOp::add: return "+";
    case ArithOp::sub: return "-";
    case ArithOp::mul: return "*";
    case ArithOp::div: return "/";
    case ArithOp::mod: return "mod";
  }
  return "?";
}

const char* cmp_op_token(CmpOp op) {
  switch (op) {
    case CmpOp::eq: return "=";
    case CmpOp::ne: return "!=";
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::ge: return ">=";
    case CmpOp::gt: return ">";
  }
  return "?";
}

const char* bool_op_token(BoolOp op) {
  switch (op) {
    case BoolOp::conj: return "&";
    case BoolOp::disj: return "|";
    case BoolOp::iff: return "<=>";
  }
  return "?";
}

void print_arith(const ArithExpr& e, int min_prec, std::string& out) {
  bool parens = aprec(e) < min_prec;
  if (parens) out += "(";
  switch (e.kind) {
    case ArithExpr::Kind::constant:
      out += std::to_string(e.value);
      break;
    case ArithExpr::Kind::variable:
      out += e.var;
      break;
    case ArithExpr::Kind::negate:
      out += "-";
      print_arith(*e.lhs, 4, out);
      break;
    case ArithExpr::Kind::binary: {
      int p = aprec(e);
      print_arith(*e.lhs, p, out);
      out += " ";
      out += arith_op_token(e.op);
      out += " ";
      print_arith(*e.rhs, p + 1, out);
      break;
    }
  }
  if (parens) out += ")";
}

void print_bool(const BoolExpr& e, int min_prec, std::string& out) {
  bool parens = bprec(e) < min_prec;
  if (parens) out += "(";
  switch (e.kind) {
    case BoolExpr::Kind::constant:
      out += e.value ? "true" : "false";
      break;
    case BoolExpr::Kind::negation:
      out += "!";
      print_bool(*e.child, 4, out);
      break;
    case BoolExpr::Kind::binary: {
      int p = bprec(e);
      print_bool(*e.blhs, p, out);
      out += " ";
      out += bool_op_token(e.op);
      out += " ";
      print_bool(*e.brhs, p + 1, out);
      break;
    }
    case BoolExpr::Kind::comparison:
      print_arith(*e.alhs, 1, out);
      out += " ";
      out += cmp_op_token(e.cmp);
      out += " ";
      print_arith(*e.arhs, 1, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string to_string(const ArithExpr& e) {
  std::string out;
  print_arith(e, 0, out);
  return out;
}

std::string to_string(const BoolExpr& e) {
  std::string out;
  print_bool(e, 0, out);
  return out;
}

bool equal(const ArithExpr& a, const ArithExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ArithExpr::Kind::constant: return a.value == b.value;
    case ArithExpr::Kind::variable: return a.var == b.var;
    case ArithExpr::Kind::negate: return equal(*a.lhs, *b.lhs);
    case ArithExpr::Kind::binary:
      return a.op == b.op && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
  return false;
}

bool equal(const BoolExpr& a, const BoolExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case BoolExpr::Kind::constant: return a.value == b.value;
    case BoolExpr::Kind::negation: return equal(*a.child, *b.child);
    case BoolExpr::Kind::binary:
      return a.op == b.op && equal(*a.blhs, *b.blhs) && equal(*a.brhs, *b.brhs);
    case BoolExpr::Kind::comparison:
      return a.cmp == b.cmp && equal(*a.alhs, *b.alhs) && equal(*a.arhs, *b.arhs);
  }
  return false;
}

void resolve_vars(const ArithExpr& e, const VarTable& vars) {
  switch (e.kind) {
    case ArithExpr::Kind::constant:
      return;
    case ArithExpr::Kind::variable: {
      int id = vars.find(e.var);
      if (id < 0)
        fail(ErrorKind::undeclared_variable, "variable '" + e.var + "'", e.pos.line,
             e.pos.column);
      e.var_id = id;
      return;
    }
    case ArithExpr::Kind::negate:
      resolve_vars(*e.lhs, vars);
      return;
    case ArithExpr::Kind::binary:
      resolve_vars(*e.lhs, vars);
      resolve_vars(*e.rhs, vars);
      return;
  }
}

void resolve_vars(const BoolExpr& e, const VarTable& vars) {
  switch (e.kind) {
    case BoolExpr::Kind::constant:
      return;
    case BoolExpr::Kind::negation:
      resolve_vars(*e.child, vars);
      return;
    case BoolExpr::Kind::binary:
      resolve_vars(*e.blhs, vars);
      resolve_vars(*e.brhs, vars);
      return;
    case BoolExpr::Kind::comparison:
      resolve_vars(*e.alhs, vars);
      resolve_vars(*e.arhs, vars);
      return;
  }
}

void collect_vars(const ArithExpr& e, std::vector<std::string>& out) {
  switch (e.kind) {
    case ArithExpr::Kind::constant:
      return;
    case ArithExpr::Kind::variable:
      out.push_back(e.var);
      return;
    case ArithExpr::Kind::negate:
      collect_vars(*e.lhs, out);
      return;
    case ArithExpr::Kind::binary:
      collect_vars(*e.lhs, out);
      collect_vars(*e.rhs, out);
      return;
  }
}

void collect_vars(const BoolExpr& e, std::vector<std::string>& out) {
  switch (e.kind) {
    case BoolExpr::Kind::constant:
      return;
    case BoolExpr::Kind::negation:
      collect_vars(*e.child, out);
      return;
    case BoolExpr::Kind::binary:
      collect_vars(*e.blhs, out);
      collect_vars(*e.brhs, out);
      return;
    case BoolExpr::Kind::comparison:
      collect_vars(*e.alhs, out);
      collect_vars(*e.arhs, out);
      return;
  }
}

}  // namespace respo
