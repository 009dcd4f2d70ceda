#ifndef IVBMC_BOX_HPP
#define IVBMC_BOX_HPP

#include <span>
#include <string>
#include <vector>

#include "ivbmc/interval.hpp"

namespace ivbmc {

// Cartesian product of intervals, one per named variable. The box is empty
// iff any dimension is empty; the canonical empty box has every dimension
// empty so that boxes over the same variables compare structurally.
class IntBox {
 public:
  IntBox() = default;
  IntBox(std::vector<std::string> names, std::vector<Interval> dims);

  static IntBox empty_like(const IntBox& proto);

  size_t size() const { return dims_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(size_t i) const { return names_[i]; }
  const Interval& dim(size_t i) const { return dims_[i]; }
  void set_dim(size_t i, const Interval& iv);

  bool is_empty() const;
  bool same_vars(const IntBox& other) const { return names_ == other.names_; }
  bool contains(std::span<const double> point) const;
  bool contains(const IntBox& other) const;

  // Replaces a partially-empty box by the canonical all-empty form.
  IntBox normalized() const;

  bool operator==(const IntBox& rhs) const;
  bool operator!=(const IntBox& rhs) const { return !(*this == rhs); }

 private:
  std::vector<std::string> names_;
  std::vector<Interval> dims_;
};

// Dimension-wise intersection; throws on mismatched variable sets.
IntBox box_intersect(const IntBox& a, const IntBox& b);

// Dimension-wise hull; the empty box is the identity element.
IntBox box_hull_join(const IntBox& a, const IntBox& b);

// Finite list of boxes over identical variables, pairwise interior-disjoint.
struct BoxSet {
  std::vector<IntBox> boxes;

  bool empty() const { return boxes.empty(); }
  size_t size() const { return boxes.size(); }
  bool any_contains(std::span<const double> point) const;
};

// a \ interior(a n b) as at most 2n boxes, peeling the lower then the upper
// slab per dimension in declaration order. The output boxes overlap only on
// faces and together with (a n b) cover a exactly.
BoxSet box_difference(const IntBox& a, const IntBox& b);

std::string to_string(const IntBox& b);

}  // namespace ivbmc

#endif  // IVBMC_BOX_HPP
