#include "ivbmc/constraint.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace ivbmc {

ExprNode ExprNode::constant(double v) {
  ExprNode n;
  n.kind = NodeKind::Constant;
  n.value = v;
  return n;
}

ExprNode ExprNode::variable(int idx, std::string name) {
  ExprNode n;
  n.kind = NodeKind::Var;
  n.var = idx;
  n.name = std::move(name);
  return n;
}

ExprNode ExprNode::unary(NodeKind k, ExprNode child) {
  ExprNode n;
  n.kind = k;
  n.kids.push_back(std::move(child));
  return n;
}

ExprNode ExprNode::binary(NodeKind k, ExprNode lhs, ExprNode rhs) {
  ExprNode n;
  n.kind = k;
  n.kids.push_back(std::move(lhs));
  n.kids.push_back(std::move(rhs));
  return n;
}

namespace {

int assign_ids(ExprNode& n, int next) {
  n.id = next++;
  for (ExprNode& k : n.kids) next = assign_ids(k, next);
  return next;
}

}  // namespace

ConstraintExpr::ConstraintExpr(ExprNode root, Relation rel)
    : root_(std::move(root)), rel_(rel) {
  node_count_ = assign_ids(root_, 0);
}

SymbolTable SymbolTable::fixed(std::vector<std::string> names) {
  SymbolTable t;
  t.names_ = std::move(names);
  for (size_t i = 0; i < t.names_.size(); ++i)
    t.index_[t.names_[i]] = static_cast<int>(i);
  t.frozen_ = true;
  return t;
}

SymbolTable SymbolTable::growing() { return SymbolTable(); }

int SymbolTable::lookup(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int SymbolTable::lookup_or_add(const std::string& name) {
  int idx = lookup(name);
  if (idx >= 0) return idx;
  if (frozen_) throw ParseError(1, "unknown variable '" + name + "'");
  idx = static_cast<int>(names_.size());
  names_.push_back(name);
  index_[name] = idx;
  return idx;
}

// ---------------------------------------------------------------------------
// Constraint text parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  End, Number, Ident,
  Plus, Minus, Star, Slash, Caret, LParen, RParen,
  Lt, Le, Gt, Ge, EqEq, NotEq, AndAnd, OrOr, Not,
};

struct Token {
  Tok kind = Tok::End;
  double num = 0.0;
  std::string text{};
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ >= s_.size()) return {Tok::End};
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
        ++pos_;
      Token t{Tok::Number};
      t.text = s_.substr(start, pos_ - start);
      try {
        t.num = std::stod(t.text);
      } catch (const std::exception&) {
        throw ParseError(1, "bad numeric literal '" + t.text + "'");
      }
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      Token t{Tok::Ident};
      t.text = s_.substr(start, pos_ - start);
      return t;
    }
    ++pos_;
    switch (c) {
      case '+': return {Tok::Plus};
      case '-': return {Tok::Minus};
      case '*': return {Tok::Star};
      case '/': return {Tok::Slash};
      case '^': return {Tok::Caret};
      case '(': return {Tok::LParen};
      case ')': return {Tok::RParen};
      case '<':
        if (pos_ < s_.size() && s_[pos_] == '=') { ++pos_; return {Tok::Le}; }
        return {Tok::Lt};
      case '>':
        if (pos_ < s_.size() && s_[pos_] == '=') { ++pos_; return {Tok::Ge}; }
        return {Tok::Gt};
      case '=':
        if (pos_ < s_.size() && s_[pos_] == '=') { ++pos_; return {Tok::EqEq}; }
        throw ParseError(1, "assignment '=' is not a comparison");
      case '!':
        if (pos_ < s_.size() && s_[pos_] == '=') { ++pos_; return {Tok::NotEq}; }
        return {Tok::Not};
      case '&':
        if (pos_ < s_.size() && s_[pos_] == '&') { ++pos_; return {Tok::AndAnd}; }
        throw ParseError(1, "stray '&'");
      case '|':
        if (pos_ < s_.size() && s_[pos_] == '|') { ++pos_; return {Tok::OrOr}; }
        throw ParseError(1, "stray '|'");
    }
    throw ParseError(1, std::string("unexpected character '") + c + "'");
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;
};

bool is_relop(Tok k) {
  return k == Tok::Lt || k == Tok::Le || k == Tok::Gt || k == Tok::Ge ||
         k == Tok::EqEq || k == Tok::NotEq;
}

class ConstraintParser {
 public:
  ConstraintParser(const std::string& text, SymbolTable& vars)
      : lex_(text), vars_(vars) {
    advance();
  }

  ConstraintExpr parse() {
    ExprNode lhs = parse_expr();
    if (cur_.kind == Tok::End)
      throw ParseError(1, "expected a comparison operator");
    reject_unsupported(cur_);
    if (!is_relop(cur_.kind)) throw ParseError(1, "expected a comparison operator");
    Tok rel = cur_.kind;
    if (rel == Tok::NotEq)
      throw UnsupportedConstraint("!=", "operator != is not supported");
    advance();
    ExprNode rhs = parse_expr();
    if (cur_.kind != Tok::End) {
      if (is_relop(cur_.kind))
        throw UnsupportedConstraint(relop_name(cur_.kind),
                                    "more than one comparison in constraint");
      reject_unsupported(cur_);
      throw ParseError(1, "trailing input after comparison");
    }
    return normalize(std::move(lhs), rel, std::move(rhs));
  }

 private:
  void advance() { cur_ = lex_.next(); }

  static std::string relop_name(Tok k) {
    switch (k) {
      case Tok::Lt: return "<";
      case Tok::Le: return "<=";
      case Tok::Gt: return ">";
      case Tok::Ge: return ">=";
      case Tok::EqEq: return "==";
      case Tok::NotEq: return "!=";
      default: return "?";
    }
  }

  static void reject_unsupported(const Token& t) {
    if (t.kind == Tok::AndAnd)
      throw UnsupportedConstraint("&&", "logical && is not supported in a constraint");
    if (t.kind == Tok::OrOr)
      throw UnsupportedConstraint("||", "logical || is not supported in a constraint");
    if (t.kind == Tok::Not)
      throw UnsupportedConstraint("!", "logical ! is not supported in a constraint");
  }

  ExprNode parse_expr() {
    ExprNode e = parse_term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      NodeKind k = cur_.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
      advance();
      e = ExprNode::binary(k, std::move(e), parse_term());
    }
    return e;
  }

  ExprNode parse_term() {
    ExprNode e = parse_factor();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      NodeKind k = cur_.kind == Tok::Star ? NodeKind::Mul : NodeKind::Div;
      advance();
      e = ExprNode::binary(k, std::move(e), parse_factor());
    }
    return e;
  }

  ExprNode parse_factor() {
    reject_unsupported(cur_);
    if (cur_.kind == Tok::Minus) {
      advance();
      return ExprNode::unary(NodeKind::Neg, parse_factor());
    }
    ExprNode e = parse_primary();
    while (cur_.kind == Tok::Caret) {
      advance();
      if (cur_.kind != Tok::Number || cur_.num != 2.0)
        throw ParseError(1, "only ^2 is supported");
      advance();
      e = ExprNode::unary(NodeKind::Sqr, std::move(e));
    }
    return e;
  }

  ExprNode parse_primary() {
    reject_unsupported(cur_);
    if (cur_.kind == Tok::Number) {
      ExprNode e = ExprNode::constant(cur_.num);
      advance();
      return e;
    }
    if (cur_.kind == Tok::Ident) {
      std::string name = cur_.text;
      advance();
      if (cur_.kind == Tok::LParen) {
        if (name != "sqrt")
          throw UnsupportedConstraint(name, "unknown function '" + name + "'");
        advance();
        ExprNode arg = parse_expr();
        expect_rparen();
        return ExprNode::unary(NodeKind::Sqrt, std::move(arg));
      }
      return ExprNode::variable(vars_.lookup_or_add(name), name);
    }
    if (cur_.kind == Tok::LParen) {
      advance();
      ExprNode e = parse_expr();
      expect_rparen();
      return e;
    }
    throw ParseError(1, "expected a number, variable or '('");
  }

  void expect_rparen() {
    if (is_relop(cur_.kind))
      throw UnsupportedConstraint(relop_name(cur_.kind),
                                  "comparison nested under arithmetic");
    reject_unsupported(cur_);
    if (cur_.kind != Tok::RParen) throw ParseError(1, "expected ')'");
    advance();
  }

  static bool is_zero_literal(const ExprNode& e) {
    return e.kind == NodeKind::Constant && e.value == 0.0;
  }

  // E1 <= E2  ->  E1 - E2 <= 0; E1 >= E2  ->  E2 - E1 <= 0; strict forms
  // collapse to the closed relation. A literal 0 on the moved side keeps the
  // tree minimal.
  static ConstraintExpr normalize(ExprNode lhs, Tok rel, ExprNode rhs) {
    auto moved = [](ExprNode keep, ExprNode away) {
      if (is_zero_literal(away)) return keep;
      return ExprNode::binary(NodeKind::Sub, std::move(keep), std::move(away));
    };
    switch (rel) {
      case Tok::Le:
      case Tok::Lt:
        return ConstraintExpr(moved(std::move(lhs), std::move(rhs)), Relation::LE0);
      case Tok::Ge:
      case Tok::Gt:
        if (is_zero_literal(rhs))
          return ConstraintExpr(ExprNode::unary(NodeKind::Neg, std::move(lhs)),
                                Relation::LE0);
        return ConstraintExpr(moved(std::move(rhs), std::move(lhs)), Relation::LE0);
      case Tok::EqEq:
        return ConstraintExpr(moved(std::move(lhs), std::move(rhs)), Relation::EQ0);
      default:
        throw ParseError(1, "expected a comparison operator");
    }
  }

  Lexer lex_;
  SymbolTable& vars_;
  Token cur_{Tok::End};
};

}  // namespace

ConstraintExpr parse_constraint(const std::string& text, SymbolTable& vars) {
  return ConstraintParser(text, vars).parse();
}

// ---------------------------------------------------------------------------
// Forward / backward evaluation
// ---------------------------------------------------------------------------

namespace {

Interval eval_node(const ExprNode& n, const IntBox& b, ForwardTrace* trace) {
  Interval r;
  switch (n.kind) {
    case NodeKind::Constant: r = Interval::punctual(n.value); break;
    case NodeKind::Var: r = b.dim(static_cast<size_t>(n.var)); break;
    case NodeKind::Add:
      r = eval_node(n.kids[0], b, trace) + eval_node(n.kids[1], b, trace);
      break;
    case NodeKind::Sub:
      r = eval_node(n.kids[0], b, trace) - eval_node(n.kids[1], b, trace);
      break;
    case NodeKind::Mul:
      r = eval_node(n.kids[0], b, trace) * eval_node(n.kids[1], b, trace);
      break;
    case NodeKind::Div:
      r = eval_node(n.kids[0], b, trace) / eval_node(n.kids[1], b, trace);
      break;
    case NodeKind::Neg:
      r = interval_fn(UnaryFn::Neg, eval_node(n.kids[0], b, trace));
      break;
    case NodeKind::Sqr:
      r = interval_fn(UnaryFn::Sqr, eval_node(n.kids[0], b, trace));
      break;
    case NodeKind::Sqrt:
      r = interval_fn(UnaryFn::Sqrt, eval_node(n.kids[0], b, trace));
      break;
  }
  if (trace) trace->node[static_cast<size_t>(n.id)] = r;
  return r;
}

struct BackwardPass {
  const ForwardTrace& fwd;
  std::vector<Interval>& dom;  // per-variable working domains
  bool infeasible = false;

  const Interval& itv(const ExprNode& n) const {
    return fwd.node[static_cast<size_t>(n.id)];
  }

  void project(const ExprNode& n, const Interval& y_in) {
    if (infeasible) return;
    Interval y = intersect(y_in, itv(n));
    if (y.is_empty()) {
      infeasible = true;
      return;
    }
    switch (n.kind) {
      case NodeKind::Constant:
        return;
      case NodeKind::Var: {
        Interval& d = dom[static_cast<size_t>(n.var)];
        d = intersect(d, y);
        if (d.is_empty()) infeasible = true;
        return;
      }
      case NodeKind::Add:
        project(n.kids[0], y - itv(n.kids[1]));
        project(n.kids[1], y - itv(n.kids[0]));
        return;
      case NodeKind::Sub:
        project(n.kids[0], y + itv(n.kids[1]));
        project(n.kids[1], itv(n.kids[0]) - y);
        return;
      case NodeKind::Mul:
        project(n.kids[0], mul_reverse(y, itv(n.kids[1])));
        project(n.kids[1], mul_reverse(y, itv(n.kids[0])));
        return;
      case NodeKind::Div:
        project(n.kids[0], y * itv(n.kids[1]));
        project(n.kids[1], mul_reverse(itv(n.kids[0]), y));
        return;
      case NodeKind::Neg:
        project(n.kids[0], -y);
        return;
      case NodeKind::Sqr: {
        Interval t = intersect(y, Interval::make(0.0, kInf));
        if (t.is_empty()) {
          infeasible = true;
          return;
        }
        Interval s = interval_fn(UnaryFn::Sqrt, t);
        project(n.kids[0], Interval::make(-s.hi(), s.hi()));
        return;
      }
      case NodeKind::Sqrt: {
        Interval t = intersect(y, Interval::make(0.0, kInf));
        if (t.is_empty()) {
          infeasible = true;
          return;
        }
        project(n.kids[0], interval_fn(UnaryFn::Sqr, t));
        return;
      }
    }
  }
};

}  // namespace

Interval forward_eval(const ConstraintExpr& c, const IntBox& b,
                      ForwardTrace* trace) {
  if (trace) trace->node.assign(static_cast<size_t>(c.node_count()), Interval::empty());
  if (b.is_empty()) return Interval::empty();
  return eval_node(c.root(), b, trace);
}

IntBox backward_project(const ConstraintExpr& c, const ForwardTrace& trace,
                        const Interval& target, const IntBox& b) {
  if (b.is_empty() || target.is_empty()) return IntBox::empty_like(b);
  std::vector<Interval> dom(b.size());
  for (size_t i = 0; i < b.size(); ++i) dom[i] = b.dim(i);
  BackwardPass pass{trace, dom};
  pass.project(c.root(), target);
  if (pass.infeasible) return IntBox::empty_like(b);
  return IntBox(b.names(), std::move(dom));
}

ConstraintExpr complement(const ConstraintExpr& c) {
  Relation r;
  switch (c.relation()) {
    case Relation::LE0: r = Relation::GT0; break;
    case Relation::GT0: r = Relation::LE0; break;
    case Relation::GE0: r = Relation::LT0; break;
    case Relation::LT0: r = Relation::GE0; break;
    case Relation::EQ0:
      throw UnsupportedConstraint(
          "==", "complement of an equality needs a union domain");
    default:
      throw Error("bad relation");
  }
  return ConstraintExpr(c.root(), r);
}

Interval relation_interval(Relation rel) {
  switch (rel) {
    case Relation::LE0:
    case Relation::LT0:
      return Interval::make(-kInf, 0.0);
    case Relation::GT0:
    case Relation::GE0:
      return Interval::make(0.0, kInf);
    case Relation::EQ0:
      return Interval::punctual(0.0);
  }
  return Interval::empty();
}

// ---------------------------------------------------------------------------
// Printing, point evaluation, structural equality
// ---------------------------------------------------------------------------

namespace {

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    default: return 4;
  }
}

std::string fmt_const(double v) {
  if (v == std::floor(v) && std::fabs(v) < 9.007199254740992e15)
    return std::to_string(static_cast<long long>(v));
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void print_node(const ExprNode& n, int parent_prec, std::string& out) {
  const int prec = precedence(n.kind);
  const bool paren = prec < parent_prec;
  if (paren) out += "(";
  switch (n.kind) {
    case NodeKind::Constant: out += fmt_const(n.value); break;
    case NodeKind::Var: out += n.name; break;
    case NodeKind::Add:
      print_node(n.kids[0], prec, out);
      out += " + ";
      print_node(n.kids[1], prec + 1, out);
      break;
    case NodeKind::Sub:
      print_node(n.kids[0], prec, out);
      out += " - ";
      print_node(n.kids[1], prec + 1, out);
      break;
    case NodeKind::Mul:
      print_node(n.kids[0], prec, out);
      out += " * ";
      print_node(n.kids[1], prec + 1, out);
      break;
    case NodeKind::Div:
      print_node(n.kids[0], prec, out);
      out += " / ";
      print_node(n.kids[1], prec + 1, out);
      break;
    case NodeKind::Neg:
      out += "-";
      print_node(n.kids[0], prec + 1, out);
      break;
    case NodeKind::Sqr:
      print_node(n.kids[0], 4, out);
      out += "^2";
      break;
    case NodeKind::Sqrt:
      out += "sqrt(";
      print_node(n.kids[0], 0, out);
      out += ")";
      break;
  }
  if (paren) out += ")";
}

}  // namespace

std::string to_string(Relation rel) {
  switch (rel) {
    case Relation::LE0: return "<= 0";
    case Relation::EQ0: return "== 0";
    case Relation::GT0: return "> 0";
    case Relation::GE0: return ">= 0";
    case Relation::LT0: return "< 0";
  }
  return "?";
}

std::string to_string(const ExprNode& n) {
  std::string out;
  print_node(n, 0, out);
  return out;
}

std::string to_string(const ConstraintExpr& c) {
  return to_string(c.root()) + " " + to_string(c.relation());
}

double eval_scalar(const ExprNode& n, std::span<const double> point) {
  switch (n.kind) {
    case NodeKind::Constant: return n.value;
    case NodeKind::Var: return point[static_cast<size_t>(n.var)];
    case NodeKind::Add:
      return eval_scalar(n.kids[0], point) + eval_scalar(n.kids[1], point);
    case NodeKind::Sub:
      return eval_scalar(n.kids[0], point) - eval_scalar(n.kids[1], point);
    case NodeKind::Mul:
      return eval_scalar(n.kids[0], point) * eval_scalar(n.kids[1], point);
    case NodeKind::Div: {
      double d = eval_scalar(n.kids[1], point);
      if (d == 0.0) return std::numeric_limits<double>::quiet_NaN();
      return eval_scalar(n.kids[0], point) / d;
    }
    case NodeKind::Neg: return -eval_scalar(n.kids[0], point);
    case NodeKind::Sqr: {
      double v = eval_scalar(n.kids[0], point);
      return v * v;
    }
    case NodeKind::Sqrt: {
      double v = eval_scalar(n.kids[0], point);
      if (v < 0.0) return std::numeric_limits<double>::quiet_NaN();
      return std::sqrt(v);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

bool node_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
  if (a.kind == NodeKind::Constant && a.value != b.value) return false;
  if (a.kind == NodeKind::Var && (a.var != b.var || a.name != b.name)) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!node_equal(a.kids[i], b.kids[i])) return false;
  return true;
}

}  // namespace

bool structurally_equal(const ConstraintExpr& a, const ConstraintExpr& b) {
  return a.relation() == b.relation() && node_equal(a.root(), b.root());
}

}  // namespace ivbmc
