#include "respo/parser.hpp"

#include <cctype>
#include <variant>

#include "respo/errors.hpp"

namespace respo {

namespace {

enum class Tok {
  end, ident, integer,
  kw_module, kw_endmodule, kw_init, kw_mod, kw_true, kw_false,
  lbracket, rbracket, lparen, rparen, colon, semicolon, dotdot,
  arrow, assign, prime_assign, empty_set,
  iff, le, ge, ne, eq, lt, gt, amp, pipe, bang,
  plus, minus, star, slash,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  long long value = 0;
  int line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_space();
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = column_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::end;
      return;
    }
    char c = src_[pos_];
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        bump();
      tok_.text = std::string(src_.substr(start, pos_ - start));
      if (tok_.text == "module") tok_.kind = Tok::kw_module;
      else if (tok_.text == "endmodule") tok_.kind = Tok::kw_endmodule;
      else if (tok_.text == "init") tok_.kind = Tok::kw_init;
      else if (tok_.text == "mod") tok_.kind = Tok::kw_mod;
      else if (tok_.text == "true") tok_.kind = Tok::kw_true;
      else if (tok_.text == "false") tok_.kind = Tok::kw_false;
      else tok_.kind = Tok::ident;
      return;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
      tok_.text = std::string(src_.substr(start, pos_ - start));
      try {
        tok_.value = std::stoll(tok_.text);
      } catch (const std::out_of_range&) {
        fail(ErrorKind::syntax, "integer literal too large", tok_.line, tok_.column);
      }
      tok_.kind = Tok::integer;
      return;
    }
    // UTF-8 empty-set sign, accepted inside update lists.
    if (static_cast<unsigned char>(c) == 0xe2 && pos_ + 2 < src_.size() &&
        static_cast<unsigned char>(src_[pos_ + 1]) == 0x88 &&
        static_cast<unsigned char>(src_[pos_ + 2]) == 0x85) {
      bump();
      bump();
      bump();
      tok_.kind = Tok::empty_set;
      return;
    }
    bump();
    switch (c) {
      case '[': tok_.kind = Tok::lbracket; return;
      case ']': tok_.kind = Tok::rbracket; return;
      case '(': tok_.kind = Tok::lparen; return;
      case ')': tok_.kind = Tok::rparen; return;
      case ';': tok_.kind = Tok::semicolon; return;
      case '&': tok_.kind = Tok::amp; return;
      case '|': tok_.kind = Tok::pipe; return;
      case '+': tok_.kind = Tok::plus; return;
      case '*': tok_.kind = Tok::star; return;
      case '/': tok_.kind = Tok::slash; return;
      case '=': tok_.kind = Tok::eq; return;
      case ':':
        if (eat('=')) tok_.kind = Tok::assign;
        else tok_.kind = Tok::colon;
        return;
      case '\'':
        if (eat('=')) {
          tok_.kind = Tok::prime_assign;
          return;
        }
        break;
      case '.':
        if (eat('.')) {
          tok_.kind = Tok::dotdot;
          return;
        }
        break;
      case '-':
        if (eat('>')) tok_.kind = Tok::arrow;
        else tok_.kind = Tok::minus;
        return;
      case '<':
        if (pos_ + 1 < src_.size() && src_[pos_] == '=' && src_[pos_ + 1] == '>') {
          bump();
          bump();
          tok_.kind = Tok::iff;
        } else if (eat('=')) {
          tok_.kind = Tok::le;
        } else {
          tok_.kind = Tok::lt;
        }
        return;
      case '>':
        if (eat('=')) tok_.kind = Tok::ge;
        else tok_.kind = Tok::gt;
        return;
      case '!':
        if (eat('=')) tok_.kind = Tok::ne;
        else tok_.kind = Tok::bang;
        return;
    }
    fail(ErrorKind::syntax, std::string("unexpected character '") + c + "'", tok_.line,
         tok_.column);
  }

  void skip_space() {
    for (;;) {
      while (pos_ < src_.size() &&
             isspace(static_cast<unsigned char>(src_[pos_])))
        bump();
      if (pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
        continue;
      }
      return;
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool eat(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      bump();
      return true;
    }
    return false;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1, column_ = 1;
  Token tok_;
};

using PExpr = std::variant<ArithPtr, BoolPtr>;

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Program parse_program() {
    Program p;
    if (peek().kind == Tok::ident && peek().text == "lightning") {
      take();
      expect(Tok::eq, "'='");
      p.safety_invariant = parse_bool();
      expect(Tok::semicolon, "';'");
    }
    while (peek().kind == Tok::kw_module) p.modules.push_back(parse_module());
    if (peek().kind != Tok::end)
      fail(ErrorKind::syntax, "expected 'module' or end of input", peek().line,
           peek().column);
    return p;
  }

  BoolPtr parse_standalone_bool() {
    BoolPtr e = parse_bool();
    if (peek().kind != Tok::end)
      fail(ErrorKind::syntax, "trailing input after expression", peek().line,
           peek().column);
    return e;
  }

 private:
  const Token& peek() const { return lex_.peek(); }
  Token take() { return lex_.take(); }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      fail(ErrorKind::syntax, std::string("expected ") + what, peek().line,
           peek().column);
    return take();
  }

  Module parse_module() {
    Module m;
    Token kw = expect(Tok::kw_module, "'module'");
    m.pos = {kw.line, kw.column};
    m.name = expect(Tok::ident, "module name").text;
    while (peek().kind == Tok::ident) m.decls.push_back(parse_decl());
    while (peek().kind == Tok::lbracket) m.commands.push_back(parse_command());
    if (peek().kind == Tok::ident)
      fail(ErrorKind::syntax, "declarations must precede commands", peek().line,
           peek().column);
    expect(Tok::kw_endmodule, "'endmodule'");
    return m;
  }

  Decl parse_decl() {
    Decl d;
    Token name = expect(Tok::ident, "variable name");
    d.name = name.text;
    d.pos = {name.line, name.column};
    expect(Tok::colon, "':'");
    expect(Tok::lbracket, "'['");
    d.lo = parse_int_literal();
    expect(Tok::dotdot, "'..'");
    d.hi = parse_int_literal();
    expect(Tok::rbracket, "']'");
    expect(Tok::kw_init, "'init'");
    d.init = parse_int_literal();
    expect(Tok::semicolon, "';'");
    return d;
  }

  long long parse_int_literal() {
    bool neg = false;
    if (peek().kind == Tok::minus) {
      take();
      neg = true;
    }
    Token t = expect(Tok::integer, "integer");
    return neg ? -t.value : t.value;
  }

  Command parse_command() {
    Command c;
    Token open = expect(Tok::lbracket, "'['");
    c.pos = {open.line, open.column};
    if (peek().kind == Tok::ident) c.action = take().text;
    expect(Tok::rbracket, "']'");
    c.guard = parse_bool();
    expect(Tok::arrow, "'->'");
    parse_updates(c);
    expect(Tok::semicolon, "';'");
    return c;
  }

  void parse_updates(Command& c) {
    // Empty update lists may be written as nothing, 'true', or (an empty-set sign).
    if (peek().kind == Tok::semicolon) return;
    if (peek().kind == Tok::kw_true) {
      take();
      return;
    }
    if (peek().kind == Tok::lparen) {
      take();
      expect(Tok::empty_set, "assignments or an empty-set sign");
      expect(Tok::rparen, "')'");
      return;
    }
    for (;;) {
      Assignment a;
      Token var = expect(Tok::ident, "variable to assign");
      a.var = var.text;
      a.pos = {var.line, var.column};
      if (peek().kind != Tok::assign && peek().kind != Tok::prime_assign)
        fail(ErrorKind::syntax, "expected ':=' or '='", peek().line, peek().column);
      take();
      a.expr = parse_arith();
      c.updates.push_back(std::move(a));
      if (peek().kind != Tok::amp) break;
      take();
    }
  }

  // Expression grammar, loosest binding first:
  //   <=>  |  &  !  comparison  + -  * / mod  unary-  atom
  // A bare arithmetic expression is not a boolean; contexts demand a kind.

  BoolPtr parse_bool() { return demand_bool(parse_iff()); }
  // Update right-hand sides stop at the additive level so the '&' joining
  // consecutive assignments is not read as a conjunction.
  ArithPtr parse_arith() { return demand_arith(parse_add()); }

  BoolPtr demand_bool(PExpr e) {
    if (auto* b = std::get_if<BoolPtr>(&e)) return *b;
    const ArithPtr& a = std::get<ArithPtr>(e);
    fail(ErrorKind::syntax, "expected a boolean expression", a->pos.line, a->pos.column);
  }

  ArithPtr demand_arith(PExpr e) {
    if (auto* a = std::get_if<ArithPtr>(&e)) return *a;
    const BoolPtr& b = std::get<BoolPtr>(e);
    fail(ErrorKind::syntax, "expected an arithmetic expression", b->pos.line,
         b->pos.column);
  }

  PExpr parse_iff() {
    PExpr l = parse_or();
    while (peek().kind == Tok::iff) {
      Token op = take();
      BoolPtr lhs = demand_bool(std::move(l));
      BoolPtr rhs = demand_bool(parse_or());
      l = BoolExpr::binary(BoolOp::iff, std::move(lhs), std::move(rhs),
                           {op.line, op.column});
    }
    return l;
  }

  PExpr parse_or() {
    PExpr l = parse_and();
    while (peek().kind == Tok::pipe) {
      Token op = take();
      BoolPtr lhs = demand_bool(std::move(l));
      BoolPtr rhs = demand_bool(parse_and());
      l = BoolExpr::binary(BoolOp::disj, std::move(lhs), std::move(rhs),
                           {op.line, op.column});
    }
    return l;
  }

  PExpr parse_and() {
    PExpr l = parse_not();
    while (peek().kind == Tok::amp) {
      Token op = take();
      BoolPtr lhs = demand_bool(std::move(l));
      BoolPtr rhs = demand_bool(parse_not());
      l = BoolExpr::binary(BoolOp::conj, std::move(lhs), std::move(rhs),
                           {op.line, op.column});
    }
    return l;
  }

  PExpr parse_not() {
    if (peek().kind == Tok::bang) {
      Token op = take();
      BoolPtr inner = demand_bool(parse_not());
      return BoolExpr::negation(std::move(inner), {op.line, op.column});
    }
    return parse_cmp();
  }

  PExpr parse_cmp() {
    PExpr l = parse_add();
    CmpOp op;
    switch (peek().kind) {
      case Tok::eq: op = CmpOp::eq; break;
      case Tok::ne: op = CmpOp::ne; break;
      case Tok::lt: op = CmpOp::lt; break;
      case Tok::le: op = CmpOp::le; break;
      case Tok::ge: op = CmpOp::ge; break;
      case Tok::gt: op = CmpOp::gt; break;
      default: return l;
    }
    Token t = take();
    ArithPtr lhs = demand_arith(std::move(l));
    ArithPtr rhs = demand_arith(parse_add());
    return BoolExpr::comparison(op, std::move(lhs), std::move(rhs), {t.line, t.column});
  }

  PExpr parse_add() {
    PExpr l = parse_mul();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      Token op = take();
      ArithPtr lhs = demand_arith(std::move(l));
      ArithPtr rhs = demand_arith(parse_mul());
      l = ArithExpr::binary(op.kind == Tok::plus ? ArithOp::add : ArithOp::sub,
                            std::move(lhs), std::move(rhs), {op.line, op.column});
    }
    return l;
  }

  PExpr parse_mul() {
    PExpr l = parse_unary();
    for (;;) {
      ArithOp op;
      switch (peek().kind) {
        case Tok::star: op = ArithOp::mul; break;
        case Tok::slash: op = ArithOp::div; break;
        case Tok::kw_mod: op = ArithOp::mod; break;
        default: return l;
      }
      Token t = take();
      ArithPtr lhs = demand_arith(std::move(l));
      ArithPtr rhs = demand_arith(parse_unary());
      l = ArithExpr::binary(op, std::move(lhs), std::move(rhs), {t.line, t.column});
    }
  }

  PExpr parse_unary() {
    if (peek().kind == Tok::minus) {
      Token op = take();
      ArithPtr inner = demand_arith(parse_unary());
      return ArithExpr::negate(std::move(inner), {op.line, op.column});
    }
    return parse_atom();
  }

  PExpr parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::integer: {
        Token tok = take();
        return ArithExpr::constant(tok.value, {tok.line, tok.column});
      }
      case Tok::ident: {
        Token tok = take();
        return ArithExpr::variable(tok.text, {tok.line, tok.column});
      }
      case Tok::kw_true: {
        Token tok = take();
        return BoolExpr::constant(true, {tok.line, tok.column});
      }
      case Tok::kw_false: {
        Token tok = take();
        return BoolExpr::constant(false, {tok.line, tok.column});
      }
      case Tok::lparen: {
        take();
        PExpr inner = parse_iff();
        expect(Tok::rparen, "')'");
        return inner;
      }
      default:
        fail(ErrorKind::syntax, "expected an expression", t.line, t.column);
    }
  }

  Lexer lex_;
};

}  // namespace

Program parse_program(std::string_view source) {
  Parser parser(source);
  Program p = parser.parse_program();
  p.validate();
  return p;
}

BoolPtr parse_bool_expr(std::string_view source) {
  Parser parser(source);
  return parser.parse_standalone_bool();
}

}  // namespace respo
