#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ivbmc/constraint.hpp"

using namespace ivbmc;

namespace {

Interval iv(double lo, double hi) { return Interval::make(lo, hi); }

IntBox box2(Interval x, Interval y) { return IntBox({"x", "y"}, {x, y}); }

ConstraintExpr parse_xy(const std::string& text) {
  SymbolTable st = SymbolTable::fixed({"x", "y"});
  return parse_constraint(text, st);
}

}  // namespace

TEST_CASE("normalization moves the right side left") {
  // x >= y with x -> x1, y -> x2 becomes x2 - x1 <= 0
  ConstraintExpr c = parse_xy("x >= y");
  CHECK(c.relation() == Relation::LE0);
  REQUIRE(c.root().kind == NodeKind::Sub);
  CHECK(c.root().kids[0].kind == NodeKind::Var);
  CHECK(c.root().kids[0].var == 1);  // y
  CHECK(c.root().kids[1].var == 0);  // x
  CHECK(to_string(c) == "y - x <= 0");

  ConstraintExpr c2 = parse_xy("y >= x^2");
  CHECK(c2.relation() == Relation::LE0);
  REQUIRE(c2.root().kind == NodeKind::Sub);
  CHECK(c2.root().kids[0].kind == NodeKind::Sqr);
  CHECK(c2.root().kids[1].var == 1);
  CHECK(to_string(c2) == "x^2 - y <= 0");

  // strict comparisons collapse to the closed relation
  ConstraintExpr c3 = parse_xy("x < y");
  CHECK(c3.relation() == Relation::LE0);
  CHECK(to_string(c3) == "x - y <= 0");

  // literal zero on the moved side keeps the tree minimal
  ConstraintExpr c4 = parse_xy("x >= 0");
  CHECK(c4.root().kind == NodeKind::Neg);
  CHECK(to_string(c4) == "-x <= 0");
  ConstraintExpr c5 = parse_xy("x <= 0");
  CHECK(c5.root().kind == NodeKind::Var);

  ConstraintExpr c6 = parse_xy("x == y");
  CHECK(c6.relation() == Relation::EQ0);
}

TEST_CASE("unsupported operators carry the offending token") {
  auto expect_unsupported = [](const std::string& text, const std::string& op) {
    SymbolTable st = SymbolTable::fixed({"x", "y"});
    try {
      parse_constraint(text, st);
      FAIL("expected UnsupportedConstraint for: " << text);
    } catch (const UnsupportedConstraint& e) {
      CHECK(e.op == op);
    }
  };
  expect_unsupported("x != y", "!=");
  expect_unsupported("(x > 1) + 1 <= 2", ">");
  expect_unsupported("x > 1 && y > 2", "&&");
  expect_unsupported("x > 1 || y > 2", "||");
  expect_unsupported("!x <= 1", "!");
  expect_unsupported("sin(x) <= 0", "sin");
  expect_unsupported("x < 1 < 2", "<");
}

TEST_CASE("plain parse errors") {
  SymbolTable st = SymbolTable::fixed({"x"});
  CHECK_THROWS_AS(parse_constraint("x >", st), ParseError);
  CHECK_THROWS_AS(parse_constraint("x + 1", st), ParseError);
  CHECK_THROWS_AS(parse_constraint("x ^ 3 <= 0", st), ParseError);
  CHECK_THROWS_AS(parse_constraint("z <= 0", st), ParseError);  // frozen table
  SymbolTable g = SymbolTable::growing();
  ConstraintExpr c = parse_constraint("a + b <= 0", g);
  CHECK(g.names() == std::vector<std::string>{"a", "b"});
  CHECK(c.root().kind == NodeKind::Add);
}

TEST_CASE("forward evaluation annotates the tree") {
  ConstraintExpr c = parse_xy("x >= y");  // y - x
  ForwardTrace tr;
  // Fig. 4 forward-step operands
  Interval f = forward_eval(c, box2(iv(0, 20), iv(0, 4294967295.0)), &tr);
  CHECK(f == iv(-20, 4294967295.0));
  CHECK(tr.node[0] == f);  // root annotation

  CHECK(forward_eval(c, box2(iv(20, 30), iv(0, 30)), nullptr) == iv(-30, 10));

  IntBox empty = IntBox::empty_like(box2(iv(0, 1), iv(0, 1)));
  CHECK(forward_eval(c, empty, nullptr).is_empty());
}

TEST_CASE("backward projection reproduces the paper contractions") {
  ConstraintExpr c = parse_xy("x >= y");  // f = y - x <= 0

  // outer direction: target [-20, 0] on [0,20] x [0, Max_uint]
  IntBox b1 = box2(iv(0, 20), iv(0, 4294967295.0));
  ForwardTrace t1;
  forward_eval(c, b1, &t1);
  IntBox r1 = backward_project(c, t1, iv(-20, 0), b1);
  CHECK(r1 == box2(iv(0, 20), iv(0, 20)));

  // inner direction: target [0, 10] on [20,30] x [0,30]
  IntBox b2 = box2(iv(20, 30), iv(0, 30));
  ForwardTrace t2;
  forward_eval(c, b2, &t2);
  IntBox r2 = backward_project(c, t2, iv(0, 10), b2);
  CHECK(r2 == box2(iv(20, 30), iv(20, 30)));

  // target equal to the forward result carries no information
  ForwardTrace t3;
  Interval f3 = forward_eval(c, b2, &t3);
  CHECK(backward_project(c, t3, f3, b2) == b2);
}

namespace {

// Random expression trees over two variables, all supported node kinds
// except division (point evaluation near zero denominators is not a useful
// oracle; division is exercised directly elsewhere).
ExprNode random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  std::uniform_int_distribution<int> var(0, 1);
  // non-negative literals: the parser reads "-3" as Neg(3), so only trees in
  // its image can round-trip structurally
  std::uniform_int_distribution<int> cst(0, 5);
  switch (pick(rng)) {
    case 0: return ExprNode::constant(cst(rng));
    case 1: {
      int v = var(rng);
      return ExprNode::variable(v, v == 0 ? "x" : "y");
    }
    case 2: return ExprNode::binary(NodeKind::Add, random_expr(rng, depth - 1),
                                    random_expr(rng, depth - 1));
    case 3: return ExprNode::binary(NodeKind::Sub, random_expr(rng, depth - 1),
                                    random_expr(rng, depth - 1));
    case 4: return ExprNode::binary(NodeKind::Mul, random_expr(rng, depth - 1),
                                    random_expr(rng, depth - 1));
    case 5: return ExprNode::unary(NodeKind::Neg, random_expr(rng, depth - 1));
    default:
      return rng() & 1
                 ? ExprNode::unary(NodeKind::Sqr, random_expr(rng, depth - 1))
                 : ExprNode::unary(NodeKind::Sqrt, random_expr(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("backward projection grid oracle: no feasible point lost") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coord(-8, 8);
  int trees = 0;
  while (trees < 400) {
    ConstraintExpr c(random_expr(rng, 3), Relation::LE0);
    int x1 = coord(rng), x2 = coord(rng), y1 = coord(rng), y2 = coord(rng);
    IntBox b = box2(iv(std::min(x1, x2), std::max(x1, x2)),
                    iv(std::min(y1, y2), std::max(y1, y2)));
    ForwardTrace tr;
    Interval fwd = forward_eval(c, b, &tr);
    if (fwd.is_empty()) continue;
    ++trees;
    Interval target = intersect(relation_interval(Relation::LE0), fwd);
    IntBox out = target.is_empty() ? IntBox::empty_like(b)
                                   : backward_project(c, tr, target, b);
    // contractance
    CHECK(b.contains(out));
    // correctness on the integer lattice
    for (double px = b.dim(0).lo(); px <= b.dim(0).hi(); px += 1.0) {
      for (double py = b.dim(1).lo(); py <= b.dim(1).hi(); py += 1.0) {
        const double p[2] = {px, py};
        double v = eval_scalar(c.root(), p);
        if (std::isnan(v) || !target.contains(v)) continue;
        REQUIRE(out.contains(p));
      }
    }
  }
}

TEST_CASE("backward projection through division") {
  // grid oracle for the one node kind the random generator leaves out
  const char* texts[] = {"x / y <= 2", "x / 3 - y <= 0", "y - x / y <= 1"};
  const Interval y_domains[] = {iv(1, 8), iv(-8, -1), iv(-4, 4)};
  for (const char* text : texts) {
    for (const Interval& dy : y_domains) {
      CAPTURE(text);
      ConstraintExpr c = parse_xy(text);
      IntBox b = box2(iv(-10, 10), dy);
      ForwardTrace tr;
      Interval fwd = forward_eval(c, b, &tr);
      Interval target = intersect(relation_interval(Relation::LE0), fwd);
      IntBox out = target.is_empty() ? IntBox::empty_like(b)
                                     : backward_project(c, tr, target, b);
      CHECK(b.contains(out));
      for (double px = -10; px <= 10; px += 1.0) {
        for (double py = dy.lo(); py <= dy.hi(); py += 1.0) {
          const double p[2] = {px, py};
          double v = eval_scalar(c.root(), p);
          if (std::isnan(v) || !target.contains(v)) continue;
          REQUIRE(out.contains(p));
        }
      }
    }
  }
}

TEST_CASE("complement is an involution and rejects equalities") {
  ConstraintExpr c = parse_xy("x >= y");
  ConstraintExpr cc = complement(c);
  CHECK(cc.relation() == Relation::GT0);
  CHECK(structurally_equal(complement(cc), c));

  ConstraintExpr ge(ExprNode::variable(0, "x"), Relation::GE0);
  CHECK(complement(ge).relation() == Relation::LT0);
  CHECK(structurally_equal(complement(complement(ge)), ge));

  ConstraintExpr eq = parse_xy("x == y");
  CHECK_THROWS_AS(complement(eq), UnsupportedConstraint);
}

TEST_CASE("relation intervals") {
  CHECK(relation_interval(Relation::LE0) == iv(-kInf, 0));
  CHECK(relation_interval(Relation::LT0) == iv(-kInf, 0));
  CHECK(relation_interval(Relation::GT0) == iv(0, kInf));
  CHECK(relation_interval(Relation::GE0) == iv(0, kInf));
  CHECK(relation_interval(Relation::EQ0) == iv(0, 0));
}

TEST_CASE("parse/print round-trip") {
  const char* samples[] = {
      "x >= y", "y >= x^2", "x + 2 * y <= 7", "sqrt(x) - y <= 0",
      "x / 2 - y <= 1", "-x <= 0", "x * x - y * y == 4", "(x - 1)^2 <= 9",
  };
  for (const char* s : samples) {
    ConstraintExpr c = parse_xy(s);
    ConstraintExpr again = parse_xy(to_string(c).c_str());
    CAPTURE(s);
    CHECK(structurally_equal(c, again));
  }

  std::mt19937 rng(29);
  for (int it = 0; it < 300; ++it) {
    ConstraintExpr c(random_expr(rng, 3),
                     rng() & 1 ? Relation::LE0 : Relation::EQ0);
    std::string text = to_string(c);
    SymbolTable st = SymbolTable::fixed({"x", "y"});
    ConstraintExpr again = parse_constraint(text, st);
    CAPTURE(text);
    CHECK(structurally_equal(c, again));
  }
}

TEST_CASE("scalar evaluation") {
  ConstraintExpr c = parse_xy("y >= x^2");  // x^2 - y
  const double p[2] = {3.0, 4.0};
  CHECK(eval_scalar(c.root(), p) == 5.0);
  ConstraintExpr d = parse_xy("x / y <= 1");
  const double q[2] = {3.0, 0.0};
  CHECK(std::isnan(eval_scalar(d.root(), q)));
  ConstraintExpr s = parse_xy("sqrt(x) <= 2");
  const double r[2] = {-1.0, 0.0};
  CHECK(std::isnan(eval_scalar(s.root(), r)));
}
