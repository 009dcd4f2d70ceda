#include "ivbmc/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ivbmc {

namespace {

constexpr double kDblMax = std::numeric_limits<double>::max();

double next_down(double x) {
  if (x == -kInf) return x;
  return std::nextafter(x, -kInf);
}

double next_up(double x) {
  if (x == kInf) return x;
  return std::nextafter(x, kInf);
}

// Round-to-nearest result plus the sign of its rounding error, obtained from
// an error-free transformation (2Sum for +, FMA residual for * and /).
// err_sign > 0 means the exact value is above the computed one. overflow is
// set when finite inputs saturated to infinity, which needs clamping when the
// infinity lands on the wrong side of the interval.
struct Rounded {
  double value;
  int err_sign;
  bool overflow;
};

Rounded rounded_sum(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) {
    return {s, 0, std::isfinite(a) && std::isfinite(b)};
  }
  // 2Sum (Knuth): exact residual of the rounded addition.
  double ap = s - b;
  double bp = s - ap;
  double e = (a - ap) + (b - bp);
  return {s, e > 0 ? 1 : (e < 0 ? -1 : 0), false};
}

Rounded rounded_prod(double a, double b) {
  if (a == 0.0 || b == 0.0) return {0.0, 0, false};  // 0 * inf = 0 over sets
  double p = a * b;
  if (!std::isfinite(p)) {
    return {p, 0, std::isfinite(a) && std::isfinite(b)};
  }
  if (!std::isnormal(p)) return {p, p > 0 ? 1 : -1, false};  // force widening
  double e = std::fma(a, b, -p);
  return {p, e > 0 ? 1 : (e < 0 ? -1 : 0), false};
}

// Quotient a/b, b finite and nonzero.
Rounded rounded_quot(double a, double b) {
  if (!std::isfinite(a)) return {a / b, 0, false};
  double q = a / b;
  if (!std::isfinite(q)) {
    return {q, 0, true};
  }
  if (q != 0.0 && !std::isnormal(q)) return {q, 1, false};  // sign irrelevant, widen both ways
  // residual r = q*b - a, exact; q - a/b has the sign of r/b
  double r = std::fma(q, b, -a);
  int sign_err = (r == 0.0) ? 0 : ((r > 0) == (b > 0) ? 1 : -1);
  // sign_err > 0 means q is above the exact quotient
  return {q, sign_err > 0 ? -1 : (sign_err < 0 ? 1 : 0), false};
}

double take_down(const Rounded& r) {
  if (r.overflow) return r.value > 0 ? kDblMax : -kInf;
  if (!std::isnormal(r.value) && r.value != 0.0 && std::isfinite(r.value))
    return next_down(r.value);
  return r.err_sign < 0 ? next_down(r.value) : r.value;
}

double take_up(const Rounded& r) {
  if (r.overflow) return r.value < 0 ? -kDblMax : kInf;
  if (!std::isnormal(r.value) && r.value != 0.0 && std::isfinite(r.value))
    return next_up(r.value);
  return r.err_sign > 0 ? next_up(r.value) : r.value;
}

double sqrt_down(double x) {
  if (x == kInf) return kInf;
  double s = std::sqrt(x);
  double r = std::fma(s, s, -x);
  return r > 0 ? std::max(0.0, next_down(s)) : s;
}

double sqrt_up(double x) {
  if (x == kInf) return kInf;
  double s = std::sqrt(x);
  double r = std::fma(s, s, -x);
  return r < 0 ? next_up(s) : s;
}

double sq_down(double m) {  // m >= 0
  return take_down(rounded_prod(m, m));
}

double sq_up(double m) {  // m >= 0
  return take_up(rounded_prod(m, m));
}

Interval add(const Interval& a, const Interval& b) {
  return Interval::make(take_down(rounded_sum(a.lo(), b.lo())),
                        take_up(rounded_sum(a.hi(), b.hi())));
}

Interval sub(const Interval& a, const Interval& b) {
  return Interval::make(take_down(rounded_sum(a.lo(), -b.hi())),
                        take_up(rounded_sum(a.hi(), -b.lo())));
}

Interval mul(const Interval& a, const Interval& b) {
  const double xs[2] = {a.lo(), a.hi()};
  const double ys[2] = {b.lo(), b.hi()};
  double lo = kInf, hi = -kInf;
  for (double x : xs) {
    for (double y : ys) {
      Rounded r = rounded_prod(x, y);
      lo = std::min(lo, take_down(r));
      hi = std::max(hi, take_up(r));
    }
  }
  return Interval::make(lo, hi);
}

// 0 not in b.
Interval div_nonzero(const Interval& a, const Interval& b) {
  const double xs[2] = {a.lo(), a.hi()};
  const double ys[2] = {b.lo(), b.hi()};
  double lo = kInf, hi = -kInf;
  for (double x : xs) {
    for (double y : ys) {
      if (!std::isfinite(y)) {
        // finite/inf tends to 0; inf/inf is dominated by a finite-y corner
        if (std::isfinite(x)) {
          lo = std::min(lo, 0.0);
          hi = std::max(hi, 0.0);
        }
        continue;
      }
      Rounded r = rounded_quot(x, y);
      lo = std::min(lo, take_down(r));
      hi = std::max(hi, take_up(r));
    }
  }
  return Interval::make(lo, hi);
}

// Hull of the generalized division result when 0 is in b.
Interval div_zero_spanning(const Interval& a, const Interval& b) {
  if (a.lo() == 0.0 && a.hi() == 0.0) return Interval::punctual(0.0);
  if (a.contains(0.0)) return Interval::entire();
  const bool b_neg = b.lo() < 0.0;
  const bool b_pos = b.hi() > 0.0;
  if (b_neg && b_pos) return Interval::entire();
  if (a.lo() > 0.0) {
    // a strictly positive
    if (b_neg) return Interval::make(-kInf, take_up(rounded_quot(a.lo(), b.lo())));
    return Interval::make(take_down(rounded_quot(a.lo(), b.hi())), kInf);
  }
  // a strictly negative
  if (b_neg) return Interval::make(take_down(rounded_quot(a.hi(), b.lo())), kInf);
  return Interval::make(-kInf, take_up(rounded_quot(a.hi(), b.hi())));
}

Interval div(const Interval& a, const Interval& b) {
  if (b.lo() == 0.0 && b.hi() == 0.0) return Interval::empty();
  if (b.contains(0.0)) return div_zero_spanning(a, b);
  return div_nonzero(a, b);
}

}  // namespace

Interval Interval::make(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInf || hi == -kInf)
    return Interval();
  return Interval(lo, hi);
}

double Interval::center() const {
  if (is_empty()) throw Error("empty interval has no width/center");
  if (lo_ == -kInf && hi_ == kInf) return 0.0;
  if (lo_ == -kInf) return hi_;
  if (hi_ == kInf) return lo_;
  return (hi_ + lo_) / 2.0;
}

Interval interval_arith(ArithOp op, const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  switch (op) {
    case ArithOp::Add: return add(a, b);
    case ArithOp::Sub: return sub(a, b);
    case ArithOp::Mul: return mul(a, b);
    case ArithOp::Div: return div(a, b);
  }
  return Interval::empty();
}

Interval interval_fn(UnaryFn f, const Interval& a) {
  if (a.is_empty()) return Interval::empty();
  switch (f) {
    case UnaryFn::Neg:
      return Interval::make(-a.hi(), -a.lo());
    case UnaryFn::Sqr: {
      const double m1 = std::fabs(a.lo());
      const double m2 = std::fabs(a.hi());
      const double big = std::max(m1, m2);
      if (a.contains(0.0)) return Interval::make(0.0, sq_up(big));
      return Interval::make(sq_down(std::min(m1, m2)), sq_up(big));
    }
    case UnaryFn::Sqrt: {
      Interval c = intersect(a, Interval::make(0.0, kInf));
      if (c.is_empty()) return c;
      return Interval::make(sqrt_down(c.lo()), sqrt_up(c.hi()));
    }
  }
  return Interval::empty();
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval::make(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return Interval::make(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval mul_reverse(const Interval& y, const Interval& z) {
  if (y.is_empty() || z.is_empty()) return Interval::empty();
  if (z.lo() == 0.0 && z.hi() == 0.0)
    return y.contains(0.0) ? Interval::entire() : Interval::empty();
  if (z.contains(0.0) && y.contains(0.0)) return Interval::entire();
  return div(y, z);
}

Interval integral_tighten(const Interval& a) {
  if (a.is_empty()) return a;
  return Interval::make(std::ceil(a.lo()), std::floor(a.hi()));
}

std::string to_string(const Interval& a) {
  if (a.is_empty()) return "empty";
  auto fmt = [](double v) -> std::string {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    if (v == std::floor(v) && std::fabs(v) < 9.007199254740992e15) {
      return std::to_string(static_cast<long long>(v));
    }
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  return "[" + fmt(a.lo()) + "," + fmt(a.hi()) + "]";
}

}  // namespace ivbmc
