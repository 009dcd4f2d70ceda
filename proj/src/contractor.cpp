#include "ivbmc/contractor.hpp"

#include <algorithm>
#include <cmath>

namespace ivbmc {

namespace {

IntBox tighten_integrals(IntBox b, const Csp& csp) {
  if (b.is_empty()) return b.normalized();
  for (size_t i = 0; i < b.size(); ++i) {
    if (csp.vars[i].integral) b.set_dim(i, integral_tighten(b.dim(i)));
  }
  return b.normalized();
}

std::vector<double> dim_widths(const IntBox& b) {
  std::vector<double> w(b.size(), 0.0);
  if (b.is_empty()) return w;
  for (size_t i = 0; i < b.size(); ++i) w[i] = b.dim(i).width();
  return w;
}

// Width lost along one dimension in a sweep; unbounded-to-unbounded counts
// as no change, unbounded-to-finite as an infinite reduction.
double width_reduction(double before, double after) {
  if (std::isinf(before) && std::isinf(after)) return 0.0;
  if (std::isinf(before)) return kInf;
  return before - after;
}

}  // namespace

IntBox hc4_revise(const IntBox& b, const ConstraintExpr& c,
                  const Interval& relation_box) {
  if (b.is_empty()) return b.normalized();
  ForwardTrace trace;
  Interval fwd = forward_eval(c, b, &trace);
  Interval y = intersect(relation_box, fwd);
  if (y.is_empty()) return IntBox::empty_like(b);
  return backward_project(c, trace, y, b);
}

IntBox outer_contract(const IntBox& b, const Csp& csp) {
  if (csp.constraints.empty()) throw Error("outer_contract: no constraints");
  IntBox cur = b;
  for (const ConstraintExpr& c : csp.constraints) {
    if (c.relation() != Relation::LE0 && c.relation() != Relation::EQ0)
      throw Error("outer_contract: constraint not in outer form");
    cur = hc4_revise(cur, c, relation_interval(c.relation()));
    if (cur.is_empty()) return cur.normalized();
  }
  return cur;
}

IntBox inner_contract(const IntBox& b, const Csp& csp) {
  if (csp.constraints.empty()) throw Error("inner_contract: no constraints");
  IntBox joined = IntBox::empty_like(b);
  for (const ConstraintExpr& c : csp.constraints) {
    ConstraintExpr cc = complement(c);
    IntBox part = hc4_revise(b, cc, relation_interval(cc.relation()));
    joined = box_hull_join(joined, part);
  }
  return joined;
}

IntBox fixpoint(ContractorKind kind, const IntBox& b, const Csp& csp,
                double eps, ContractionReport* report) {
  if (eps <= 0.0) throw Error("fixpoint: eps must be positive");
  ContractionReport rep;
  rep.input = b;
  rep.constraints_per_sweep = static_cast<int>(csp.constraints.size());
  rep.width_before = dim_widths(b);

  IntBox cur = tighten_integrals(b, csp);
  if (cur.is_empty()) {
    rep.output = cur;
    rep.converged = true;
    rep.width_after = dim_widths(cur);
    if (report) *report = rep;
    return cur;
  }

  while (rep.sweeps < kMaxSweeps) {
    std::vector<double> before = dim_widths(cur);
    IntBox next = kind == ContractorKind::Outer ? outer_contract(cur, csp)
                                                : inner_contract(cur, csp);
    next = tighten_integrals(std::move(next), csp);
    ++rep.sweeps;
    if (next.is_empty()) {
      cur = next;
      rep.converged = true;
      break;
    }
    std::vector<double> after = dim_widths(next);
    double max_red = 0.0;
    for (size_t i = 0; i < before.size(); ++i)
      max_red = std::max(max_red, width_reduction(before[i], after[i]));
    cur = next;
    if (max_red < eps) {
      rep.converged = true;
      break;
    }
  }

  rep.output = cur;
  rep.width_after = dim_widths(cur);
  if (report) *report = rep;
  return cur;
}

RegionPartition partition(const IntBox& b, const Csp& csp,
                          PartitionTrace* trace, double eps) {
  RegionPartition part;
  part.original = b;
  if (b.is_empty()) return part;  // no states, nothing to classify

  ContractionReport outer_rep;
  IntBox outer_box = fixpoint(ContractorKind::Outer, b, csp, eps, &outer_rep);
  if (outer_box.is_empty()) {
    // Every point violates: nothing to prune, the checker searches all of b.
    part.s_out.boxes.push_back(b);
    part.whole_domain_violates = true;
    if (trace) trace->outer = outer_rep;
    return part;
  }

  part.s_out = box_difference(b, outer_box);

  ContractionReport inner_rep;
  IntBox inner_box = fixpoint(ContractorKind::Inner, outer_box, csp, eps,
                              &inner_rep);
  part.s_in = box_difference(outer_box, inner_box);
  if (!inner_box.is_empty()) part.s_boundary.boxes.push_back(inner_box);

  if (trace) {
    trace->outer = outer_rep;
    trace->inner = inner_rep;
  }
  return part;
}

}  // namespace ivbmc
