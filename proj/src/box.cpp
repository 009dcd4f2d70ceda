#include "ivbmc/box.hpp"

#include <algorithm>

namespace ivbmc {

IntBox::IntBox(std::vector<std::string> names, std::vector<Interval> dims)
    : names_(std::move(names)), dims_(std::move(dims)) {
  if (names_.size() != dims_.size())
    throw Error("box: name/interval count mismatch");
  for (const Interval& d : dims_) {
    if (d.is_empty()) {
      std::fill(dims_.begin(), dims_.end(), Interval::empty());
      break;
    }
  }
}

IntBox IntBox::empty_like(const IntBox& proto) {
  return IntBox(proto.names_,
                std::vector<Interval>(proto.size(), Interval::empty()));
}

void IntBox::set_dim(size_t i, const Interval& iv) { dims_[i] = iv; }

bool IntBox::is_empty() const {
  return std::any_of(dims_.begin(), dims_.end(),
                     [](const Interval& d) { return d.is_empty(); });
}

bool IntBox::contains(std::span<const double> point) const {
  if (point.size() != dims_.size()) return false;
  for (size_t i = 0; i < dims_.size(); ++i)
    if (!dims_[i].contains(point[i])) return false;
  return true;
}

bool IntBox::contains(const IntBox& other) const {
  if (other.is_empty()) return true;
  if (is_empty() || !same_vars(other)) return false;
  for (size_t i = 0; i < dims_.size(); ++i)
    if (!dims_[i].contains(other.dims_[i])) return false;
  return true;
}

IntBox IntBox::normalized() const {
  if (is_empty()) return empty_like(*this);
  return *this;
}

bool IntBox::operator==(const IntBox& rhs) const {
  if (names_ != rhs.names_) return false;
  if (is_empty() || rhs.is_empty()) return is_empty() && rhs.is_empty();
  return dims_ == rhs.dims_;
}

IntBox box_intersect(const IntBox& a, const IntBox& b) {
  if (!a.same_vars(b)) throw Error("box_intersect: mismatched variable sets");
  std::vector<Interval> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = intersect(a.dim(i), b.dim(i));
  return IntBox(a.names(), std::move(out));
}

IntBox box_hull_join(const IntBox& a, const IntBox& b) {
  if (!a.same_vars(b)) throw Error("box_hull_join: mismatched variable sets");
  if (a.is_empty()) return b.normalized();
  if (b.is_empty()) return a.normalized();
  std::vector<Interval> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = hull(a.dim(i), b.dim(i));
  return IntBox(a.names(), std::move(out));
}

bool BoxSet::any_contains(std::span<const double> point) const {
  return std::any_of(boxes.begin(), boxes.end(),
                     [&](const IntBox& b) { return b.contains(point); });
}

BoxSet box_difference(const IntBox& a, const IntBox& b) {
  BoxSet out;
  if (a.is_empty()) return out;
  IntBox core = box_intersect(a, b);
  if (core.is_empty()) {
    out.boxes.push_back(a);
    return out;
  }
  // Axis sweep: peel the lower then the upper slab along each dimension,
  // shrinking the remainder as we go. The remainder after the last dimension
  // equals a n b and is dropped.
  IntBox rem = a;
  for (size_t i = 0; i < a.size(); ++i) {
    const Interval& r = rem.dim(i);
    const Interval& c = core.dim(i);
    if (r.lo() < c.lo()) {
      IntBox slab = rem;
      slab.set_dim(i, Interval::make(r.lo(), c.lo()));
      out.boxes.push_back(slab);
    }
    if (c.hi() < r.hi()) {
      IntBox slab = rem;
      slab.set_dim(i, Interval::make(c.hi(), r.hi()));
      out.boxes.push_back(slab);
    }
    rem.set_dim(i, c);
  }
  return out;
}

std::string to_string(const IntBox& b) {
  if (b.size() == 0) return "()";
  std::string s;
  for (size_t i = 0; i < b.size(); ++i) {
    if (i) s += " x ";
    s += b.name(i) + "=" + to_string(b.dim(i));
  }
  return s;
}

}  // namespace ivbmc
