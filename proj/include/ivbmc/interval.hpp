#ifndef IVBMC_INTERVAL_HPP
#define IVBMC_INTERVAL_HPP

#include <limits>
#include <string>

#include "ivbmc/errors.hpp"

namespace ivbmc {

enum class ArithOp { Add, Sub, Mul, Div };
enum class UnaryFn { Neg, Sqr, Sqrt };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed real interval [lo, hi] with outward-rounded endpoint arithmetic.
// Unbounded sides are IEEE infinities. The empty interval is a distinguished
// value with no observable endpoints; NaN never survives into an endpoint,
// any operation that would produce one yields empty instead.
class Interval {
 public:
  // Default-constructed intervals are empty.
  Interval() = default;

  // Normalizing factory: NaN endpoints, lo > hi, or a bound on the wrong
  // side of infinity all collapse to the empty interval.
  static Interval make(double lo, double hi);
  static Interval punctual(double v) { return make(v, v); }
  static Interval empty() { return Interval(); }
  static Interval entire() { return make(-kInf, kInf); }

  bool is_empty() const { return lo_ > hi_; }
  bool is_punctual() const { return !is_empty() && lo_ == hi_; }

  double lo() const {
    if (is_empty()) throw Error("empty interval has no endpoints");
    return lo_;
  }
  double hi() const {
    if (is_empty()) throw Error("empty interval has no endpoints");
    return hi_;
  }

  double width() const {
    if (is_empty()) throw Error("empty interval has no width/center");
    return hi_ - lo_;
  }
  double center() const;

  bool contains(double v) const { return !is_empty() && lo_ <= v && v <= hi_; }
  bool contains(const Interval& other) const {
    if (other.is_empty()) return true;
    return !is_empty() && lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  bool operator==(const Interval& rhs) const {
    if (is_empty() || rhs.is_empty()) return is_empty() && rhs.is_empty();
    return lo_ == rhs.lo_ && hi_ == rhs.hi_;
  }
  bool operator!=(const Interval& rhs) const { return !(*this == rhs); }

 private:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {}
  // Canonical empty representation: [+inf, -inf].
  double lo_ = kInf;
  double hi_ = -kInf;
};

// Tightest closed interval containing {a' op b' | a' in a, b' in b}, with
// outward rounding. Any empty operand yields empty. Division by an interval
// containing 0 returns the hull of the generalized-division result; division
// by [0,0] is empty.
Interval interval_arith(ArithOp op, const Interval& a, const Interval& b);

// Tightest closed image interval. sqrt clips the argument to [0,inf) first;
// sqr splits at 0.
Interval interval_fn(UnaryFn f, const Interval& a);

inline Interval operator+(const Interval& a, const Interval& b) {
  return interval_arith(ArithOp::Add, a, b);
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return interval_arith(ArithOp::Sub, a, b);
}
inline Interval operator*(const Interval& a, const Interval& b) {
  return interval_arith(ArithOp::Mul, a, b);
}
inline Interval operator/(const Interval& a, const Interval& b) {
  return interval_arith(ArithOp::Div, a, b);
}
inline Interval operator-(const Interval& a) {
  return interval_fn(UnaryFn::Neg, a);
}

Interval intersect(const Interval& a, const Interval& b);

// Smallest interval containing both (the join of the inner contractor).
Interval hull(const Interval& a, const Interval& b);

// Solves x * z in y for x: the hull of {x | exists z' in z with x*z' in y}.
// Unlike plain division this is total, e.g. mul_reverse([0,0],[0,0]) is the
// whole line. Used by backward projections of * and /.
Interval mul_reverse(const Interval& y, const Interval& z);

// [ceil(lo), floor(hi)]; empty when no integer fits.
Interval integral_tighten(const Interval& a);

std::string to_string(const Interval& a);

}  // namespace ivbmc

#endif  // IVBMC_INTERVAL_HPP
