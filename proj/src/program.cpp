#include "ivbmc/program.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace ivbmc {

PExpr PExpr::constant(long long v) {
  PExpr e;
  e.kind = PKind::Const;
  e.value = v;
  return e;
}

PExpr PExpr::variable(std::string name) {
  PExpr e;
  e.kind = PKind::Var;
  e.var = std::move(name);
  return e;
}

PExpr PExpr::unary(PKind k, PExpr c) {
  PExpr e;
  e.kind = k;
  e.kids.push_back(std::move(c));
  return e;
}

PExpr PExpr::binary(PKind k, PExpr l, PExpr r) {
  PExpr e;
  e.kind = k;
  e.kids.push_back(std::move(l));
  e.kids.push_back(std::move(r));
  return e;
}

std::vector<const DeclItem*> ProgramIR::decl_items() const {
  std::vector<const DeclItem*> out;
  for (const DeclGroup& g : decls)
    for (const DeclItem& d : g.items) out.push_back(&d);
  return out;
}

const DeclItem* ProgramIR::find_decl(const std::string& name) const {
  for (const DeclGroup& g : decls)
    for (const DeclItem& d : g.items)
      if (d.name == name) return &d;
  return nullptr;
}

bool ProgramIR::updates_in_loop(const std::string& name) const {
  if (!loop) return false;
  for (const BodyStmt& s : loop->body) {
    if (const Update* u = std::get_if<Update>(&s); u && u->target == name)
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class PTok {
  End, Ident, Number,
  LParen, RParen, LBrace, RBrace, Semicolon, Comma, Assign,
  Plus, Minus, Star, Slash,
  Lt, Le, Gt, Ge, EqEq, NotEq, AndAnd, OrOr, Not,
};

struct PToken {
  PTok kind = PTok::End;
  std::string text{};
  long long num = 0;
  int line = 1;
};

class ProgramLexer {
 public:
  explicit ProgramLexer(const std::string& s) : s_(s) {}

  PToken next() {
    skip_trivia();
    PToken t;
    t.line = line_;
    if (pos_ >= s_.size()) return t;
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '.')
        throw ParseError(line_, "floating-point literals are not supported");
      t.kind = PTok::Number;
      t.text = s_.substr(start, pos_ - start);
      try {
        t.num = std::stoll(t.text);
      } catch (const std::exception&) {
        throw ParseError(line_, "integer literal out of range: " + t.text);
      }
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      t.kind = PTok::Ident;
      t.text = s_.substr(start, pos_ - start);
      return t;
    }
    ++pos_;
    auto two = [&](char second, PTok with, PTok without) {
      if (pos_ < s_.size() && s_[pos_] == second) {
        ++pos_;
        t.kind = with;
      } else {
        t.kind = without;
      }
    };
    switch (c) {
      case '(': t.kind = PTok::LParen; return t;
      case ')': t.kind = PTok::RParen; return t;
      case '{': t.kind = PTok::LBrace; return t;
      case '}': t.kind = PTok::RBrace; return t;
      case ';': t.kind = PTok::Semicolon; return t;
      case ',': t.kind = PTok::Comma; return t;
      case '+': t.kind = PTok::Plus; return t;
      case '-': t.kind = PTok::Minus; return t;
      case '*': t.kind = PTok::Star; return t;
      case '/': t.kind = PTok::Slash; return t;
      case '=': two('=', PTok::EqEq, PTok::Assign); return t;
      case '<': two('=', PTok::Le, PTok::Lt); return t;
      case '>': two('=', PTok::Ge, PTok::Gt); return t;
      case '!': two('=', PTok::NotEq, PTok::Not); return t;
      case '&':
        if (pos_ < s_.size() && s_[pos_] == '&') {
          ++pos_;
          t.kind = PTok::AndAnd;
          return t;
        }
        throw ParseError(line_, "stray '&'");
      case '|':
        if (pos_ < s_.size() && s_[pos_] == '|') {
          ++pos_;
          t.kind = PTok::OrOr;
          return t;
        }
        throw ParseError(line_, "stray '|'");
    }
    throw ParseError(line_, std::string("unexpected character '") + c + "'");
  }

 private:
  void skip_trivia() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (c == '/' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '/') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (c == '/' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '*') {
        pos_ += 2;
        while (pos_ + 1 < s_.size() && !(s_[pos_] == '*' && s_[pos_ + 1] == '/')) {
          if (s_[pos_] == '\n') ++line_;
          ++pos_;
        }
        pos_ = std::min(pos_ + 2, s_.size());
      } else {
        return;
      }
    }
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1;
};

bool is_assume_callee(const std::string& s) {
  return s == "assume" || s == "__ESBMC_assume" || s == "__VERIFIER_assume";
}

bool is_nondet_callee(const std::string& s) {
  return s == "nondet_int" || s == "nondet_uint" ||
         s == "__VERIFIER_nondet_int" || s == "__VERIFIER_nondet_uint";
}

bool is_relop(PTok k) {
  return k == PTok::Lt || k == PTok::Le || k == PTok::Gt || k == PTok::Ge ||
         k == PTok::EqEq || k == PTok::NotEq;
}

CmpOp to_cmpop(PTok k) {
  switch (k) {
    case PTok::Lt: return CmpOp::LT;
    case PTok::Le: return CmpOp::LE;
    case PTok::Gt: return CmpOp::GT;
    case PTok::Ge: return CmpOp::GE;
    case PTok::EqEq: return CmpOp::EQ;
    default: return CmpOp::NE;
  }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class ProgramParser {
 public:
  explicit ProgramParser(const std::string& text) : lex_(text) { advance(); }

  ProgramIR parse() {
    expect_ident("int");
    expect_ident("main");
    expect(PTok::LParen, "'('");
    if (cur_.kind == PTok::Ident && cur_.text == "void") advance();
    expect(PTok::RParen, "')'");
    expect(PTok::LBrace, "'{'");

    bool returned = false;
    while (cur_.kind != PTok::RBrace) {
      if (cur_.kind == PTok::End)
        throw ParseError(cur_.line, "unexpected end of input, expected '}'");
      if (cur_.kind != PTok::Ident)
        throw ParseError(cur_.line, "expected a statement");
      const std::string& kw = cur_.text;
      if (kw == "int" || kw == "unsigned" || kw == "int32_t" || kw == "uint32_t") {
        require_phase(Phase::Decls, "declaration");
        parse_decl_group();
      } else if (is_assume_callee(kw)) {
        bump_phase(Phase::Assumes, "assume");
        parse_assume_into(ir_.assumes);
      } else if (kw == "while") {
        if (ir_.loop) throw ParseError(cur_.line, "multiple loops are not supported");
        bump_phase(Phase::Loop, "while loop");
        parse_loop();
      } else if (kw == "assert") {
        bump_phase(Phase::Asserts, "assert");
        parse_assert();
      } else if (kw == "return") {
        advance();
        if (cur_.kind == PTok::Number) {
          ir_.return_value = cur_.num;
          advance();
        } else if (cur_.kind == PTok::Minus) {
          advance();
          ir_.return_value = -expect_number();
        }
        expect(PTok::Semicolon, "';'");
        returned = true;
        break;
      } else {
        throw ParseError(cur_.line, "unsupported statement at '" + kw + "'");
      }
    }
    (void)returned;
    expect(PTok::RBrace, "'}'");
    if (cur_.kind != PTok::End)
      throw ParseError(cur_.line, "trailing input after '}'");
    validate();
    return std::move(ir_);
  }

 private:
  enum class Phase { Decls, Assumes, Loop, Asserts };

  void require_phase(Phase want, const char* what) {
    if (phase_ > want)
      throw ParseError(cur_.line,
                       std::string(what) + " must appear earlier in the program");
  }

  void bump_phase(Phase want, const char* what) {
    require_phase(want, what);
    phase_ = want;
  }

  void advance() { cur_ = lex_.next(); }

  void expect(PTok k, const char* what) {
    if (cur_.kind != k)
      throw ParseError(cur_.line, std::string("expected ") + what);
    advance();
  }

  void expect_ident(const std::string& word) {
    if (cur_.kind != PTok::Ident || cur_.text != word)
      throw ParseError(cur_.line, "expected '" + word + "'");
    advance();
  }

  long long expect_number() {
    if (cur_.kind != PTok::Number) throw ParseError(cur_.line, "expected a number");
    long long v = cur_.num;
    advance();
    return v;
  }

  void parse_decl_group() {
    DeclGroup g;
    g.line = cur_.line;
    if (cur_.text == "unsigned") {
      advance();
      if (cur_.kind == PTok::Ident && cur_.text == "int") advance();
      g.type = VarType::UInt32;
    } else if (cur_.text == "uint32_t") {
      advance();
      g.type = VarType::UInt32;
    } else {
      advance();  // int / int32_t
      g.type = VarType::Int32;
    }
    while (true) {
      DeclItem item;
      item.type = g.type;
      item.line = cur_.line;
      if (cur_.kind != PTok::Ident)
        throw ParseError(cur_.line, "expected a variable name");
      item.name = cur_.text;
      advance();
      if (cur_.kind == PTok::Assign) {
        advance();
        if (cur_.kind == PTok::Ident && is_nondet_callee(cur_.text)) {
          item.nondet = true;
          item.nondet_callee = cur_.text;
          advance();
          expect(PTok::LParen, "'('");
          expect(PTok::RParen, "')'");
        } else if (cur_.kind == PTok::Ident) {
          throw ParseError(cur_.line, "unknown initializer call '" + cur_.text + "'");
        } else if (cur_.kind == PTok::Minus) {
          advance();
          item.init = -expect_number();
        } else if (cur_.kind == PTok::Number) {
          item.init = expect_number();
        } else {
          throw ParseError(cur_.line, "expected an initializer");
        }
      } else {
        // uninitialized declarations read like nondet inputs
        item.nondet = true;
        item.nondet_callee = g.type == VarType::UInt32 ? "nondet_uint" : "nondet_int";
      }
      g.items.push_back(std::move(item));
      if (cur_.kind == PTok::Comma) {
        advance();
        continue;
      }
      break;
    }
    expect(PTok::Semicolon, "';'");
    ir_.decls.push_back(std::move(g));
  }

  PExpr parse_expr() {
    PExpr e = parse_term();
    while (cur_.kind == PTok::Plus || cur_.kind == PTok::Minus) {
      PKind k = cur_.kind == PTok::Plus ? PKind::Add : PKind::Sub;
      advance();
      e = PExpr::binary(k, std::move(e), parse_term());
    }
    return e;
  }

  PExpr parse_term() {
    PExpr e = parse_factor();
    while (cur_.kind == PTok::Star || cur_.kind == PTok::Slash) {
      PKind k = cur_.kind == PTok::Star ? PKind::Mul : PKind::Div;
      advance();
      e = PExpr::binary(k, std::move(e), parse_factor());
    }
    return e;
  }

  PExpr parse_factor() {
    if (cur_.kind == PTok::Minus) {
      advance();
      if (cur_.kind == PTok::Number) {  // fold negative literals
        PExpr e = PExpr::constant(-cur_.num);
        advance();
        return e;
      }
      return PExpr::unary(PKind::Neg, parse_factor());
    }
    if (cur_.kind == PTok::Number) {
      PExpr e = PExpr::constant(cur_.num);
      advance();
      return e;
    }
    if (cur_.kind == PTok::Ident) {
      std::string name = cur_.text;
      int line = cur_.line;
      advance();
      if (cur_.kind == PTok::LParen)
        throw ParseError(line, "calls are not allowed inside expressions");
      return PExpr::variable(std::move(name));
    }
    if (cur_.kind == PTok::LParen) {
      advance();
      PExpr e = parse_expr();
      expect(PTok::RParen, "')'");
      return e;
    }
    throw ParseError(cur_.line, "expected an expression");
  }

  Comparison parse_comparison() {
    Comparison c;
    c.line = cur_.line;
    c.lhs = parse_expr();
    if (is_relop(cur_.kind)) {
      c.op = to_cmpop(cur_.kind);
      advance();
      c.rhs = parse_expr();
    } else {
      // bare expression: C truthiness, expr != 0
      c.op = CmpOp::NE;
      c.rhs = PExpr::constant(0);
    }
    return c;
  }

  std::vector<Comparison> parse_conjunction() {
    std::vector<Comparison> cmps;
    cmps.push_back(parse_comparison());
    while (cur_.kind == PTok::AndAnd) {
      advance();
      cmps.push_back(parse_comparison());
    }
    if (cur_.kind == PTok::OrOr)
      throw ParseError(cur_.line, "'||' is not supported");
    return cmps;
  }

  void parse_assume_into(std::vector<AssumeStmt>& out) {
    std::string callee = cur_.text;
    int line = cur_.line;
    advance();
    expect(PTok::LParen, "'('");
    std::vector<Comparison> cmps = parse_conjunction();
    expect(PTok::RParen, "')'");
    expect(PTok::Semicolon, "';'");
    for (Comparison& c : cmps) {
      AssumeStmt a;
      a.cmp = std::move(c);
      a.callee = callee;
      a.line = line;
      out.push_back(std::move(a));
    }
  }

  void parse_assert() {
    int line = cur_.line;
    advance();
    expect(PTok::LParen, "'('");
    std::vector<Comparison> cmps = parse_conjunction();
    expect(PTok::RParen, "')'");
    expect(PTok::Semicolon, "';'");
    for (Comparison& c : cmps) {
      AssertStmt a;
      a.cmp = std::move(c);
      a.line = line;
      ir_.asserts.push_back(std::move(a));
    }
  }

  void parse_loop() {
    LoopInfo loop;
    loop.line = cur_.line;
    advance();  // while
    expect(PTok::LParen, "'('");
    if (cur_.kind == PTok::Ident && is_nondet_callee(cur_.text)) {
      loop.nondet_continue = true;
      loop.nondet_callee = cur_.text;
      advance();
      expect(PTok::LParen, "'('");
      expect(PTok::RParen, "')'");
    } else {
      loop.guard = parse_comparison();
      if (cur_.kind == PTok::AndAnd) {
        advance();
        if (cur_.kind != PTok::Ident || !is_nondet_callee(cur_.text))
          throw ParseError(cur_.line,
                           "only a nondet call may follow '&&' in a loop guard");
        loop.nondet_continue = true;
        loop.nondet_callee = cur_.text;
        advance();
        expect(PTok::LParen, "'('");
        expect(PTok::RParen, "')'");
      }
    }
    expect(PTok::RParen, "')'");
    expect(PTok::LBrace, "'{'");
    while (cur_.kind != PTok::RBrace) {
      if (cur_.kind != PTok::Ident)
        throw ParseError(cur_.line, "expected a loop-body statement");
      if (cur_.text == "while")
        throw ParseError(cur_.line, "nested loops are not supported");
      if (is_assume_callee(cur_.text)) {
        std::vector<AssumeStmt> assumes;
        parse_assume_into(assumes);
        for (AssumeStmt& a : assumes) loop.body.emplace_back(std::move(a));
        continue;
      }
      // update: ident = expr ;
      Update u;
      u.line = cur_.line;
      u.target = cur_.text;
      advance();
      expect(PTok::Assign, "'='");
      u.raw_rhs = parse_expr();
      expect(PTok::Semicolon, "';'");
      classify_update(u);
      loop.body.emplace_back(std::move(u));
    }
    expect(PTok::RBrace, "'}'");
    ir_.loop = std::move(loop);
  }

  static bool mentions(const PExpr& e, const std::string& name) {
    if (e.kind == PKind::Var) return e.var == name;
    for (const PExpr& k : e.kids)
      if (mentions(k, name)) return true;
    return false;
  }

  static void classify_update(Update& u) {
    const PExpr& rhs = u.raw_rhs;
    auto is_target = [&](const PExpr& e) {
      return e.kind == PKind::Var && e.var == u.target;
    };
    if (rhs.kind == PKind::Add) {
      if (is_target(rhs.kids[0])) {
        u.kind = UpdateKind::AddTerm;
        u.term = rhs.kids[1];
        return;
      }
      if (is_target(rhs.kids[1])) {
        u.kind = UpdateKind::AddTerm;
        u.term = rhs.kids[0];
        return;
      }
    }
    if (rhs.kind == PKind::Sub && is_target(rhs.kids[0])) {
      u.kind = UpdateKind::SubTerm;
      u.term = rhs.kids[1];
      return;
    }
    if (!mentions(rhs, u.target)) {
      u.kind = UpdateKind::Assign;
      u.term = rhs;
      return;
    }
    u.kind = UpdateKind::Opaque;  // e.g. x = x * x
    u.term = rhs;
  }

  void validate() {
    std::set<std::string> declared;
    for (const DeclGroup& g : ir_.decls) {
      for (const DeclItem& d : g.items) {
        if (!declared.insert(d.name).second)
          throw ParseError(d.line, "variable '" + d.name + "' declared twice");
      }
    }
    auto check_expr = [&](const PExpr& e, int line, auto&& self) -> void {
      if (e.kind == PKind::Var && !declared.count(e.var))
        throw ParseError(line, "use of undeclared variable '" + e.var + "'");
      for (const PExpr& k : e.kids) self(k, line, self);
    };
    auto check_cmp = [&](const Comparison& c) {
      check_expr(c.lhs, c.line, check_expr);
      check_expr(c.rhs, c.line, check_expr);
    };
    for (const AssumeStmt& a : ir_.assumes) check_cmp(a.cmp);
    for (const AssertStmt& a : ir_.asserts) check_cmp(a.cmp);
    if (ir_.loop) {
      if (ir_.loop->guard) check_cmp(*ir_.loop->guard);
      for (const BodyStmt& s : ir_.loop->body) {
        if (const Update* u = std::get_if<Update>(&s)) {
          if (!declared.count(u->target))
            throw ParseError(u->line, "use of undeclared variable '" + u->target + "'");
          check_expr(u->raw_rhs, u->line, check_expr);
        } else {
          check_cmp(std::get<AssumeStmt>(s).cmp);
        }
      }
    }
  }

  ProgramLexer lex_;
  PToken cur_;
  ProgramIR ir_;
  Phase phase_ = Phase::Decls;
};

}  // namespace

ProgramIR parse_program(const std::string& text) {
  return ProgramParser(text).parse();
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

int pexpr_prec(PKind k) {
  switch (k) {
    case PKind::Add:
    case PKind::Sub: return 1;
    case PKind::Mul:
    case PKind::Div: return 2;
    case PKind::Neg: return 3;
    default: return 4;
  }
}

void print_pexpr(const PExpr& e, int parent_prec, std::string& out) {
  const int prec = pexpr_prec(e.kind);
  const bool paren = prec < parent_prec;
  if (paren) out += "(";
  switch (e.kind) {
    case PKind::Const: out += std::to_string(e.value); break;
    case PKind::Var: out += e.var; break;
    case PKind::Add:
      print_pexpr(e.kids[0], prec, out);
      out += " + ";
      print_pexpr(e.kids[1], prec + 1, out);
      break;
    case PKind::Sub:
      print_pexpr(e.kids[0], prec, out);
      out += " - ";
      print_pexpr(e.kids[1], prec + 1, out);
      break;
    case PKind::Mul:
      print_pexpr(e.kids[0], prec, out);
      out += " * ";
      print_pexpr(e.kids[1], prec + 1, out);
      break;
    case PKind::Div:
      print_pexpr(e.kids[0], prec, out);
      out += " / ";
      print_pexpr(e.kids[1], prec + 1, out);
      break;
    case PKind::Neg:
      out += "-";
      print_pexpr(e.kids[0], prec + 1, out);
      break;
  }
  if (paren) out += ")";
}

}  // namespace

std::string to_string(CmpOp op) {
  switch (op) {
    case CmpOp::LT: return "<";
    case CmpOp::LE: return "<=";
    case CmpOp::GT: return ">";
    case CmpOp::GE: return ">=";
    case CmpOp::EQ: return "==";
    case CmpOp::NE: return "!=";
  }
  return "?";
}

std::string to_string(const PExpr& e) {
  std::string out;
  print_pexpr(e, 0, out);
  return out;
}

std::string to_string(const Comparison& c) {
  return to_string(c.lhs) + " " + to_string(c.op) + " " + to_string(c.rhs);
}

// ---------------------------------------------------------------------------
// Property analysis
// ---------------------------------------------------------------------------

PropertyAnalysis analyze_properties(const ProgramIR& p) {
  PropertyAnalysis out;
  SymbolTable table = SymbolTable::growing();
  for (const AssertStmt& a : p.asserts) {
    std::string text = to_string(a.cmp);
    SymbolTable attempt = table;  // commit variables only on success
    try {
      ConstraintExpr c = parse_constraint(text, attempt);
      table = std::move(attempt);
      out.constraints.push_back(std::move(c));
    } catch (const UnsupportedConstraint& e) {
      out.skipped.push_back({text, "unsupported-operator", e.op, a.line});
    } catch (const ParseError& e) {
      out.skipped.push_back({text, "parse-error", e.what(), a.line});
    }
  }
  out.vars = table.names();
  return out;
}

// ---------------------------------------------------------------------------
// Interval analysis
// ---------------------------------------------------------------------------

namespace {

Interval type_range(VarType t) {
  return t == VarType::UInt32 ? Interval::make(0.0, 4294967295.0)
                              : Interval::make(-2147483648.0, 2147483647.0);
}

// var <op> constant, with the variable on the left. Returns false when the
// comparison is not of that shape.
bool canonical_var_const(const Comparison& c, std::string& var, CmpOp& op,
                         long long& k) {
  if (c.lhs.kind == PKind::Var && c.rhs.kind == PKind::Const) {
    var = c.lhs.var;
    op = c.op;
    k = c.rhs.value;
    return true;
  }
  if (c.lhs.kind == PKind::Const && c.rhs.kind == PKind::Var) {
    var = c.rhs.var;
    k = c.lhs.value;
    switch (c.op) {  // flip
      case CmpOp::LT: op = CmpOp::GT; break;
      case CmpOp::LE: op = CmpOp::GE; break;
      case CmpOp::GT: op = CmpOp::LT; break;
      case CmpOp::GE: op = CmpOp::LE; break;
      default: op = c.op; break;
    }
    return true;
  }
  return false;
}

// Closed integer interval implied by var <op> k; NE is not representable.
Interval implied_interval(CmpOp op, long long k) {
  double kd = static_cast<double>(k);
  switch (op) {
    case CmpOp::LT: return Interval::make(-kInf, kd - 1);
    case CmpOp::LE: return Interval::make(-kInf, kd);
    case CmpOp::GT: return Interval::make(kd + 1, kInf);
    case CmpOp::GE: return Interval::make(kd, kInf);
    case CmpOp::EQ: return Interval::punctual(kd);
    case CmpOp::NE: return Interval::entire();
  }
  return Interval::entire();
}

using Ranges = std::map<std::string, Interval>;

Interval pexpr_interval(const PExpr& e, const Ranges& ranges) {
  switch (e.kind) {
    case PKind::Const: return Interval::punctual(static_cast<double>(e.value));
    case PKind::Var: {
      auto it = ranges.find(e.var);
      return it == ranges.end() ? Interval::entire() : it->second;
    }
    case PKind::Add:
      return pexpr_interval(e.kids[0], ranges) + pexpr_interval(e.kids[1], ranges);
    case PKind::Sub:
      return pexpr_interval(e.kids[0], ranges) - pexpr_interval(e.kids[1], ranges);
    case PKind::Mul:
      return pexpr_interval(e.kids[0], ranges) * pexpr_interval(e.kids[1], ranges);
    case PKind::Div:
      return pexpr_interval(e.kids[0], ranges) / pexpr_interval(e.kids[1], ranges);
    case PKind::Neg:
      return -pexpr_interval(e.kids[0], ranges);
  }
  return Interval::entire();
}

Monotonicity update_direction(const ProgramIR& p, const std::string& var,
                              const Ranges& ranges) {
  bool inc_ok = true, dec_ok = true, any = false;
  for (const BodyStmt& s : p.loop->body) {
    const Update* u = std::get_if<Update>(&s);
    if (!u || u->target != var) continue;
    any = true;
    if (u->kind == UpdateKind::Assign || u->kind == UpdateKind::Opaque) {
      inc_ok = dec_ok = false;
      break;
    }
    Interval t = pexpr_interval(u->term, ranges);
    if (t.is_empty()) continue;
    bool nonneg = t.lo() >= 0.0;
    bool nonpos = t.hi() <= 0.0;
    if (u->kind == UpdateKind::AddTerm) {
      inc_ok = inc_ok && nonneg;
      dec_ok = dec_ok && nonpos;
    } else {  // SubTerm
      inc_ok = inc_ok && nonpos;
      dec_ok = dec_ok && nonneg;
    }
  }
  if (!any) return Monotonicity::Constant;
  if (inc_ok) return Monotonicity::MonotoneIncreasing;
  if (dec_ok) return Monotonicity::MonotoneDecreasing;
  return Monotonicity::Unknown;
}

// Largest possible per-iteration growth of `var` (for increasing variables)
// or shrink (for decreasing ones), from the update terms.
double max_step(const ProgramIR& p, const std::string& var, const Ranges& ranges,
                bool increasing) {
  double step = 0.0;
  for (const BodyStmt& s : p.loop->body) {
    const Update* u = std::get_if<Update>(&s);
    if (!u || u->target != var) continue;
    Interval t = pexpr_interval(u->term, ranges);
    if (t.is_empty()) continue;
    if (increasing)
      step += u->kind == UpdateKind::AddTerm ? std::max(0.0, t.hi())
                                             : std::max(0.0, -t.lo());
    else
      step += u->kind == UpdateKind::SubTerm ? std::max(0.0, t.hi())
                                             : std::max(0.0, -t.lo());
  }
  return step;
}

Interval widen_loop_var(const ProgramIR& p, const DeclItem& d,
                        const Interval& init, Monotonicity dir,
                        const Ranges& ranges) {
  Interval bound = type_range(d.type);
  if (dir == Monotonicity::Unknown) return bound;

  std::string gvar;
  CmpOp gop;
  long long gk = 0;
  bool guard_on_var = p.loop->guard &&
                      canonical_var_const(*p.loop->guard, gvar, gop, gk) &&
                      gvar == d.name;

  if (dir == Monotonicity::MonotoneIncreasing) {
    double hi = bound.hi();
    if (guard_on_var && (gop == CmpOp::LT || gop == CmpOp::LE)) {
      // at loop entry var <= entry_max, plus at most one more step
      double entry_max = gop == CmpOp::LT ? static_cast<double>(gk) - 1
                                          : static_cast<double>(gk);
      double step = max_step(p, d.name, ranges, true);
      if (std::isfinite(step)) hi = std::min(hi, entry_max + step);
    }
    return Interval::make(init.lo(), std::max(init.hi(), hi));
  }
  // MonotoneDecreasing
  double lo = bound.lo();
  if (guard_on_var && (gop == CmpOp::GT || gop == CmpOp::GE)) {
    double entry_min = gop == CmpOp::GT ? static_cast<double>(gk) + 1
                                        : static_cast<double>(gk);
    double step = max_step(p, d.name, ranges, false);
    if (std::isfinite(step)) lo = std::max(lo, entry_min - step);
  }
  return Interval::make(std::min(init.lo(), lo), init.hi());
}

}  // namespace

Interval eval_pexpr_interval(const PExpr& e, const DomainMap& domains) {
  Ranges r;
  for (const auto& [name, vd] : domains) r[name] = vd.itv;
  return pexpr_interval(e, r);
}

DomainMap analyze_intervals(const ProgramIR& p) {
  // initial ranges: declared type refined by constant initializers
  Ranges init;
  for (const DeclGroup& g : p.decls) {
    for (const DeclItem& d : g.items) {
      init[d.name] = d.nondet ? type_range(d.type)
                              : Interval::punctual(static_cast<double>(d.init));
    }
  }

  // assume comparisons against constants restrict the initial ranges
  for (const AssumeStmt& a : p.assumes) {
    std::string var;
    CmpOp op;
    long long k;
    if (!canonical_var_const(a.cmp, var, op, k)) continue;
    if (op == CmpOp::NE) continue;
    auto it = init.find(var);
    if (it == init.end()) continue;
    it->second = intersect(it->second, implied_interval(op, k));
    if (it->second.is_empty())
      throw EmptyDomainError("assume-unsatisfiable program: variable '" + var +
                             "' has an empty domain (line " +
                             std::to_string(a.line) + ")");
  }

  // widen loop-carried variables along their update direction; iterate since
  // update terms may reference other widened variables
  Ranges cur = init;
  if (p.loop) {
    for (int pass = 0; pass < 8; ++pass) {
      Ranges next = init;
      for (const DeclGroup& g : p.decls) {
        for (const DeclItem& d : g.items) {
          if (!p.updates_in_loop(d.name)) continue;
          Monotonicity dir = update_direction(p, d.name, cur);
          next[d.name] = widen_loop_var(p, d, init[d.name], dir, cur);
        }
      }
      if (next == cur) break;
      cur = std::move(next);
    }
    // confirm stability; fall back to type ranges if the directions still
    // disagree with the widened ranges
    for (const DeclGroup& g : p.decls) {
      for (const DeclItem& d : g.items) {
        if (!p.updates_in_loop(d.name)) continue;
        Monotonicity dir = update_direction(p, d.name, cur);
        Interval want = widen_loop_var(p, d, init[d.name], dir, cur);
        if (want != cur[d.name]) cur[d.name] = type_range(d.type);
      }
    }
  }

  DomainMap out;
  for (const DeclGroup& g : p.decls) {
    for (const DeclItem& d : g.items) {
      out[d.name] = VarDomain{integral_tighten(cur[d.name]), true};
    }
  }
  return out;
}

Monotonicity monotonicity_check(const ProgramIR& p, const std::string& var,
                                const DomainMap& domains) {
  if (!p.loop || !p.updates_in_loop(var)) return Monotonicity::Constant;
  Ranges r;
  for (const auto& [name, vd] : domains) r[name] = vd.itv;
  return update_direction(p, var, r);
}

std::string to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::MonotoneIncreasing: return "monotone-increasing";
    case Monotonicity::MonotoneDecreasing: return "monotone-decreasing";
    case Monotonicity::Constant: return "constant";
    case Monotonicity::Unknown: return "unknown";
  }
  return "?";
}

Csp build_csp(const ProgramIR& p, const PropertyAnalysis& props,
              const DomainMap& domains) {
  Csp csp;
  std::vector<Interval> dims;
  for (const std::string& name : props.vars) {
    const DeclItem* d = p.find_decl(name);
    csp.vars.push_back({name, true});
    auto it = domains.find(name);
    if (it != domains.end())
      dims.push_back(it->second.itv);
    else
      dims.push_back(d ? type_range(d->type) : Interval::entire());
  }
  csp.domain = IntBox(props.vars, std::move(dims));
  csp.constraints = props.constraints;
  return csp;
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

namespace {

bool pexpr_equal(const PExpr& a, const PExpr& b) {
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
  if (a.kind == PKind::Const && a.value != b.value) return false;
  if (a.kind == PKind::Var && a.var != b.var) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!pexpr_equal(a.kids[i], b.kids[i])) return false;
  return true;
}

bool cmp_equal(const Comparison& a, const Comparison& b) {
  return a.op == b.op && pexpr_equal(a.lhs, b.lhs) && pexpr_equal(a.rhs, b.rhs);
}

bool assume_equal(const AssumeStmt& a, const AssumeStmt& b) {
  return a.callee == b.callee && cmp_equal(a.cmp, b.cmp);
}

}  // namespace

bool structurally_equal(const ProgramIR& a, const ProgramIR& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (size_t i = 0; i < a.decls.size(); ++i) {
    const DeclGroup& ga = a.decls[i];
    const DeclGroup& gb = b.decls[i];
    if (ga.type != gb.type || ga.items.size() != gb.items.size()) return false;
    for (size_t j = 0; j < ga.items.size(); ++j) {
      const DeclItem& da = ga.items[j];
      const DeclItem& db = gb.items[j];
      if (da.name != db.name || da.type != db.type || da.nondet != db.nondet)
        return false;
      if (!da.nondet && da.init != db.init) return false;
      if (da.nondet && da.nondet_callee != db.nondet_callee) return false;
    }
  }
  if (a.assumes.size() != b.assumes.size()) return false;
  for (size_t i = 0; i < a.assumes.size(); ++i)
    if (!assume_equal(a.assumes[i], b.assumes[i])) return false;
  if (a.loop.has_value() != b.loop.has_value()) return false;
  if (a.loop) {
    const LoopInfo& la = *a.loop;
    const LoopInfo& lb = *b.loop;
    if (la.guard.has_value() != lb.guard.has_value()) return false;
    if (la.guard && !cmp_equal(*la.guard, *lb.guard)) return false;
    if (la.nondet_continue != lb.nondet_continue) return false;
    if (la.nondet_continue && la.nondet_callee != lb.nondet_callee) return false;
    if (la.body.size() != lb.body.size()) return false;
    for (size_t i = 0; i < la.body.size(); ++i) {
      if (la.body[i].index() != lb.body[i].index()) return false;
      if (const Update* ua = std::get_if<Update>(&la.body[i])) {
        const Update& ub = std::get<Update>(lb.body[i]);
        if (ua->target != ub.target || ua->kind != ub.kind ||
            !pexpr_equal(ua->raw_rhs, ub.raw_rhs))
          return false;
      } else if (!assume_equal(std::get<AssumeStmt>(la.body[i]),
                               std::get<AssumeStmt>(lb.body[i]))) {
        return false;
      }
    }
  }
  if (a.asserts.size() != b.asserts.size()) return false;
  for (size_t i = 0; i < a.asserts.size(); ++i)
    if (!cmp_equal(a.asserts[i].cmp, b.asserts[i].cmp)) return false;
  return a.return_value == b.return_value;
}

}  // namespace ivbmc
