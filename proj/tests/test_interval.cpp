#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ivbmc/box.hpp"
#include "ivbmc/interval.hpp"

using namespace ivbmc;

namespace {

Interval iv(double lo, double hi) { return Interval::make(lo, hi); }

double sample(std::mt19937& rng, const Interval& a) {
  double lo = std::max(a.lo(), -1e12);
  double hi = std::min(a.hi(), 1e12);
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

// Mixed-magnitude operand generator for the property tests.
Interval random_interval(std::mt19937& rng) {
  std::uniform_int_distribution<int> shape(0, 9);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> small(-50, 50);
  std::uniform_int_distribution<int> expo(-25, 25);
  auto scaled = [&] { return unit(rng) * std::ldexp(1.0, expo(rng)); };
  switch (shape(rng)) {
    case 0: {  // degenerate
      double v = scaled();
      return Interval::punctual(v);
    }
    case 1: {  // integer endpoints
      int a = small(rng), b = small(rng);
      return iv(std::min(a, b), std::max(a, b));
    }
    case 2: {  // half-unbounded
      double v = scaled();
      return rng() & 1 ? iv(v, kInf) : iv(-kInf, v);
    }
    default: {
      double a = scaled(), b = scaled();
      return iv(std::min(a, b), std::max(a, b));
    }
  }
}

double point_op(ArithOp op, double x, double y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  return 0.0;
}

}  // namespace

TEST_CASE("arithmetic on paper walkthrough operands") {
  CHECK(interval_arith(ArithOp::Add, iv(0, 20), iv(-20, 0)) == iv(-20, 20));
  // Fig. 4 forward-step operand: [0, Max_uint] - [0, 20]
  CHECK(interval_arith(ArithOp::Sub, iv(0, 4294967295.0), iv(0, 20)) ==
        iv(-20, 4294967295.0));
  CHECK(interval_arith(ArithOp::Mul, iv(-2, 3), iv(-1, 4)) == iv(-8, 12));
}

TEST_CASE("multiplication endpoints match a brute-force grid oracle") {
  const Interval a = iv(-2, 3), b = iv(-1, 4);
  const Interval r = a * b;
  double lo = kInf, hi = -kInf;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      double x = a.lo() + (a.hi() - a.lo()) * i / 100.0;
      double y = b.lo() + (b.hi() - b.lo()) * j / 100.0;
      double p = x * y;
      CHECK(r.contains(p));
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
  }
  // endpoint attainment: the grid extremes reach the interval endpoints
  CHECK(lo == r.lo());
  CHECK(hi == r.hi());
}

TEST_CASE("unary functions") {
  CHECK(interval_fn(UnaryFn::Neg, iv(2, 5)) == iv(-5, -2));
  CHECK(interval_fn(UnaryFn::Sqr, iv(-2, 3)) == iv(0, 9));
  CHECK(interval_fn(UnaryFn::Sqr, iv(2, 3)) == iv(4, 9));
  CHECK(interval_fn(UnaryFn::Sqr, iv(-3, -2)) == iv(4, 9));

  Interval s = interval_fn(UnaryFn::Sqrt, iv(0.25, 1.44));
  CHECK(s.lo() == 0.5);  // exact: 0.25 is a perfect square in binary
  CHECK(s.hi() == doctest::Approx(1.2).epsilon(1e-12));
  // sampling containment
  for (int i = 0; i <= 200; ++i) {
    double x = 0.25 + (1.44 - 0.25) * i / 200.0;
    CHECK(s.contains(std::sqrt(x)));
  }

  CHECK(interval_fn(UnaryFn::Sqrt, iv(-4, -1)).is_empty());
  CHECK(interval_fn(UnaryFn::Sqrt, iv(-4, 9)) == iv(0, 3));
}

TEST_CASE("intersection and hull") {
  // Fig. 6 backward-step result
  CHECK(intersect(iv(0, 30), iv(20, 40)) == iv(20, 30));
  CHECK(intersect(iv(1, 5), iv(6, 9)).is_empty());
  CHECK(hull(iv(0, 1), iv(3, 4)) == iv(0, 4));
  CHECK(hull(Interval::empty(), iv(3, 4)) == iv(3, 4));
  CHECK(intersect(Interval::empty(), iv(3, 4)).is_empty());
}

TEST_CASE("width and center") {
  CHECK(iv(0, 20).width() == 20.0);
  CHECK(iv(20, 30).center() == 25.0);
  CHECK(iv(5, 5).width() == 0.0);  // degenerate / punctual
  CHECK(iv(5, 5).is_punctual());
  CHECK_THROWS_AS(Interval::empty().width(), Error);
  CHECK_THROWS_AS(Interval::empty().center(), Error);
  CHECK_THROWS_AS(Interval::empty().lo(), Error);
}

TEST_CASE("division handles zero-spanning denominators") {
  CHECK((iv(1, 2) / iv(0, 0)).is_empty());
  CHECK(iv(1, 2) / iv(-1, 1) == Interval::entire());
  CHECK(iv(-2, 3) / iv(-1, 1) == Interval::entire());
  CHECK(iv(0, 0) / iv(-1, 1) == iv(0, 0));
  CHECK(iv(2, 4) / iv(0, 2) == iv(1, kInf));
  CHECK(iv(2, 4) / iv(-2, 0) == iv(-kInf, -1));
  CHECK(iv(-4, -2) / iv(0, 2) == iv(-kInf, -1));
  CHECK(iv(6, 8) / iv(2, 4) == iv(1.5, 4));
}

TEST_CASE("mul_reverse is total") {
  CHECK(mul_reverse(iv(0, 0), iv(0, 0)) == Interval::entire());
  CHECK(mul_reverse(iv(1, 2), iv(0, 0)).is_empty());
  CHECK(mul_reverse(iv(-1, 1), iv(-1, 1)) == Interval::entire());
  CHECK(mul_reverse(iv(6, 8), iv(2, 4)) == iv(1.5, 4));
}

TEST_CASE("integral tightening") {
  CHECK(integral_tighten(iv(0.3, 9.7)) == iv(1, 9));
  CHECK(integral_tighten(iv(2.2, 2.8)).is_empty());
  CHECK(integral_tighten(iv(-20, 0)) == iv(-20, 0));
  CHECK(integral_tighten(iv(-kInf, 2.5)) == iv(-kInf, 2));
  CHECK(integral_tighten(Interval::empty()).is_empty());
}

TEST_CASE("inclusion property: point results stay inside interval results") {
  std::mt19937 rng(7);
  const ArithOp ops[] = {ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div};
  const UnaryFn fns[] = {UnaryFn::Neg, UnaryFn::Sqr, UnaryFn::Sqrt};
  for (int it = 0; it < 2000; ++it) {
    Interval a = random_interval(rng);
    Interval b = random_interval(rng);
    for (ArithOp op : ops) {
      Interval r = interval_arith(op, a, b);
      for (int s = 0; s < 20; ++s) {
        double x = sample(rng, a), y = sample(rng, b);
        if (op == ArithOp::Div && y == 0.0) continue;
        double v = point_op(op, x, y);
        if (std::isnan(v)) continue;
        CAPTURE(x); CAPTURE(y);
        REQUIRE(r.contains(v));
      }
    }
    for (UnaryFn f : fns) {
      Interval r = interval_fn(f, a);
      for (int s = 0; s < 20; ++s) {
        double x = sample(rng, a);
        double v = f == UnaryFn::Neg ? -x : (f == UnaryFn::Sqr ? x * x : std::sqrt(x));
        if (std::isnan(v)) continue;
        REQUIRE(r.contains(v));
      }
    }
  }
}

TEST_CASE("outward soundness against long double endpoint evaluation") {
  std::mt19937 rng(11);
  for (int it = 0; it < 5000; ++it) {
    Interval a = random_interval(rng);
    Interval b = random_interval(rng);
    if (std::isinf(a.lo()) || std::isinf(a.hi()) || std::isinf(b.lo()) ||
        std::isinf(b.hi()))
      continue;
    const long double xs[2] = {a.lo(), a.hi()};
    const long double ys[2] = {b.lo(), b.hi()};
    const ArithOp ops[] = {ArithOp::Add, ArithOp::Sub, ArithOp::Mul};
    for (ArithOp op : ops) {
      Interval r = interval_arith(op, a, b);
      for (long double x : xs) {
        for (long double y : ys) {
          long double v = op == ArithOp::Add   ? x + y
                          : op == ArithOp::Sub ? x - y
                                               : x * y;
          REQUIRE(static_cast<long double>(r.lo()) <= v);
          REQUIRE(v <= static_cast<long double>(r.hi()));
        }
      }
    }
    if (!b.contains(0.0)) {
      Interval r = a / b;
      for (long double x : xs) {
        for (long double y : ys) {
          long double v = x / y;
          REQUIRE(static_cast<long double>(r.lo()) <= v);
          REQUIRE(v <= static_cast<long double>(r.hi()));
        }
      }
    }
  }
}

TEST_CASE("lattice laws and width monotonicity") {
  std::mt19937 rng(13);
  for (int it = 0; it < 2000; ++it) {
    Interval a = random_interval(rng);
    Interval b = random_interval(rng);
    CHECK(intersect(a, a) == a);
    CHECK(hull(a, a) == a);
    Interval m = intersect(a, b);
    Interval h = hull(a, b);
    CHECK(h.contains(a));
    CHECK(a.contains(m));
    if (!m.is_empty())
      CHECK(m.width() <= std::min(a.width(), b.width()));
  }
}

// --- boxes ------------------------------------------------------------------

namespace {

IntBox box2(const char* nx, Interval x, const char* ny, Interval y) {
  return IntBox({nx, ny}, {x, y});
}

}  // namespace

TEST_CASE("box intersection") {
  IntBox a = box2("x", iv(0, 20), "y", iv(0, 30));
  IntBox b = box2("x", iv(10, 40), "y", iv(0, 10));
  CHECK(box_intersect(a, b) == box2("x", iv(10, 20), "y", iv(0, 10)));

  IntBox empty = IntBox::empty_like(a);
  CHECK(box_intersect(a, empty).is_empty());

  // Fig. 7: contracted box inside the original afnp2014 domain
  IntBox dom = box2("x", iv(1, 2147483647.0), "y", iv(0, 1000));
  IntBox inner = box2("x", iv(1, 1000), "y", iv(1, 1000));
  CHECK(box_intersect(inner, dom) == inner);

  IntBox c = IntBox({"z"}, {iv(0, 1)});
  CHECK_THROWS_AS(box_intersect(a, c), Error);
}

TEST_CASE("box difference: 1-D and 2-D shapes") {
  IntBox a1 = IntBox({"x"}, {iv(0, 10)});
  IntBox b1 = IntBox({"x"}, {iv(0, 5)});
  BoxSet d1 = box_difference(a1, b1);
  REQUIRE(d1.size() == 1);
  CHECK(d1.boxes[0] == IntBox({"x"}, {iv(5, 10)}));

  IntBox a2 = box2("x", iv(0, 2), "y", iv(0, 2));
  IntBox b2 = box2("x", iv(0, 1), "y", iv(0, 1));
  BoxSet d2 = box_difference(a2, b2);
  REQUIRE(d2.size() == 2);
  CHECK(d2.boxes[0] == box2("x", iv(1, 2), "y", iv(0, 2)));
  CHECK(d2.boxes[1] == box2("x", iv(0, 1), "y", iv(1, 2)));

  // disjoint: difference is a itself
  BoxSet d3 = box_difference(a2, box2("x", iv(5, 6), "y", iv(5, 6)));
  REQUIRE(d3.size() == 1);
  CHECK(d3.boxes[0] == a2);
}

TEST_CASE("box difference grid oracle") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coord(0, 12);
  std::uniform_int_distribution<int> ndim(1, 3);
  for (int it = 0; it < 300; ++it) {
    int n = ndim(rng);
    std::vector<std::string> names;
    std::vector<Interval> da, db;
    for (int i = 0; i < n; ++i) {
      names.push_back("v" + std::to_string(i));
      int a1 = coord(rng), a2 = coord(rng);
      int b1 = coord(rng), b2 = coord(rng);
      da.push_back(iv(std::min(a1, a2), std::max(a1, a2)));
      db.push_back(iv(std::min(b1, b2), std::max(b1, b2)));
    }
    IntBox a(names, da), b(names, db);
    BoxSet diff = box_difference(a, b);
    IntBox core = box_intersect(a, b);

    for (const IntBox& out : diff.boxes) {
      CHECK(a.contains(out));
      // no output box reaches into the interior of b
      IntBox ov = box_intersect(out, b);
      if (!ov.is_empty()) {
        bool face = false;
        for (size_t i = 0; i < ov.size(); ++i)
          if (ov.dim(i).width() == 0.0) face = true;
        CHECK(face);
      }
    }
    // pairwise interior disjointness
    for (size_t i = 0; i < diff.size(); ++i) {
      for (size_t j = i + 1; j < diff.size(); ++j) {
        IntBox ov = box_intersect(diff.boxes[i], diff.boxes[j]);
        if (ov.is_empty()) continue;
        bool face = false;
        for (size_t k = 0; k < ov.size(); ++k)
          if (ov.dim(k).width() == 0.0) face = true;
        CHECK(face);
      }
    }
    // every lattice point of a is covered by the correct side
    std::vector<double> p(static_cast<size_t>(n));
    std::vector<int> idx(static_cast<size_t>(n), 0);
    bool done = false;
    while (!done) {
      for (int i = 0; i < n; ++i)
        p[static_cast<size_t>(i)] = a.dim(static_cast<size_t>(i)).lo() + idx[static_cast<size_t>(i)];
      if (a.contains(p)) {
        bool in_core = !core.is_empty() && core.contains(p);
        bool in_diff = diff.any_contains(p);
        CHECK((in_core || in_diff));
        if (!in_core) CHECK(in_diff);
      }
      int d = 0;
      for (; d < n; ++d) {
        if (a.dim(static_cast<size_t>(d)).lo() + ++idx[static_cast<size_t>(d)] <=
            a.dim(static_cast<size_t>(d)).hi())
          break;
        idx[static_cast<size_t>(d)] = 0;
      }
      done = d == n;
    }
  }
}

TEST_CASE("afnp2014 region decomposition") {
  // The deterministic axis-sweep decomposition of [x]' \ [x]''. Note this
  // differs from the second slab sometimes quoted for this example; the
  // union is identical.
  IntBox outer = box2("x", iv(1, 2147483647.0), "y", iv(0, 1000));
  IntBox inner = box2("x", iv(1, 1000), "y", iv(1, 1000));
  BoxSet s_in = box_difference(outer, inner);
  REQUIRE(s_in.size() == 2);
  CHECK(s_in.boxes[0] == box2("x", iv(1000, 2147483647.0), "y", iv(0, 1000)));
  CHECK(s_in.boxes[1] == box2("x", iv(1, 1000), "y", iv(0, 1)));
}
