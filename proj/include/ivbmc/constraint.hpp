#ifndef IVBMC_CONSTRAINT_HPP
#define IVBMC_CONSTRAINT_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ivbmc/box.hpp"
#include "ivbmc/interval.hpp"

namespace ivbmc {

// f(x) <relation> 0. Parsing only ever produces LE0 or EQ0 (the outer form);
// GT0/GE0/LT0 arise from complementation.
enum class Relation { LE0, EQ0, GT0, GE0, LT0 };

enum class NodeKind { Constant, Var, Add, Sub, Mul, Div, Neg, Sqr, Sqrt };

struct ExprNode {
  NodeKind kind = NodeKind::Constant;
  int id = -1;          // preorder index within the owning constraint
  double value = 0.0;   // Constant
  int var = -1;         // Var: index into the CSP variable list
  std::string name;     // Var: printable name
  std::vector<ExprNode> kids;  // 1 for unary, 2 for binary

  static ExprNode constant(double v);
  static ExprNode variable(int idx, std::string name);
  static ExprNode unary(NodeKind k, ExprNode child);
  static ExprNode binary(NodeKind k, ExprNode lhs, ExprNode rhs);
};

class ConstraintExpr {
 public:
  ConstraintExpr(ExprNode root, Relation rel);

  const ExprNode& root() const { return root_; }
  Relation relation() const { return rel_; }
  int node_count() const { return node_count_; }

 private:
  ExprNode root_;
  Relation rel_;
  int node_count_ = 0;
};

// Maps variable names to CSP indices. A growing table registers unseen names
// in first-appearance order (how property analysis collects assert
// variables); a fixed table rejects them.
class SymbolTable {
 public:
  static SymbolTable fixed(std::vector<std::string> names);
  static SymbolTable growing();

  int lookup(const std::string& name) const;  // -1 when absent
  int lookup_or_add(const std::string& name);
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  bool frozen_ = false;
};

struct CspVar {
  std::string name;
  bool integral = false;
};

struct Csp {
  std::vector<CspVar> vars;
  IntBox domain;
  std::vector<ConstraintExpr> constraints;
};

// Parses a single comparison E <op> E with op in {<, <=, >, >=, ==} over the
// grammar: integers/decimals, identifiers, + - * /, ^2, sqrt(), parentheses.
// The result is normalized to f(x) <= 0 or f(x) == 0 by moving the right
// side left; strict comparisons collapse to their closed counterparts.
// Throws UnsupportedConstraint for !=, logical operators, unknown functions
// and comparisons nested under arithmetic; ParseError otherwise.
ConstraintExpr parse_constraint(const std::string& text, SymbolTable& vars);

struct ForwardTrace {
  std::vector<Interval> node;  // indexed by ExprNode::id
};

// Natural interval extension of the expression over the box, annotating
// every sub-node for the backward pass. An empty box evaluates to empty.
Interval forward_eval(const ConstraintExpr& c, const IntBox& b,
                      ForwardTrace* trace);

// HC4 backward pass: walks the annotated tree top-down applying inverse
// projections per node and intersecting variable domains. `target` must
// already be intersected with the forward result.
IntBox backward_project(const ConstraintExpr& c, const ForwardTrace& trace,
                        const Interval& target, const IntBox& b);

// LE0 <-> GT0, GE0 <-> LT0; complementing EQ0 would need a union domain and
// throws UnsupportedConstraint.
ConstraintExpr complement(const ConstraintExpr& c);

// The interval the relation constrains f(x) to. Strict relations map to the
// same closed interval as their non-strict counterparts.
Interval relation_interval(Relation rel);

std::string to_string(Relation rel);
std::string to_string(const ConstraintExpr& c);
std::string to_string(const ExprNode& n);

// Point evaluation; NaN where the expression is undefined (division by zero,
// sqrt of a negative).
double eval_scalar(const ExprNode& n, std::span<const double> point);

bool structurally_equal(const ConstraintExpr& a, const ConstraintExpr& b);

}  // namespace ivbmc

#endif  // IVBMC_CONSTRAINT_HPP
