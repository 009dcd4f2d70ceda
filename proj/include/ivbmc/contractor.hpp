#ifndef IVBMC_CONTRACTOR_HPP
#define IVBMC_CONTRACTOR_HPP

#include <vector>

#include "ivbmc/box.hpp"
#include "ivbmc/constraint.hpp"

namespace ivbmc {

inline constexpr double kFixpointEps = 1e-9;
inline constexpr int kMaxSweeps = 100;

struct ContractionReport {
  IntBox input;
  IntBox output;
  int sweeps = 0;
  int constraints_per_sweep = 0;
  bool converged = false;
  std::vector<double> width_before;  // per dimension; inf for unbounded
  std::vector<double> width_after;
};

// The three-way split of a domain box: s_out is guaranteed to violate some
// constraint, s_in is guaranteed to satisfy all of them, s_boundary is what
// a checker still has to search.
struct RegionPartition {
  IntBox original;
  BoxSet s_out;
  BoxSet s_in;
  BoxSet s_boundary;
  bool whole_domain_violates = false;
};

// Forward-backward contraction for a single constraint: intersects the
// forward image with `relation_box`, then projects back onto every variable.
// Contraction (result inside b) and correctness (no point of b with
// f(p) in relation_box removed) hold by construction.
IntBox hc4_revise(const IntBox& b, const ConstraintExpr& c,
                  const Interval& relation_box);

// One sweep of the outer contractor: hc4_revise per constraint in
// declaration order with the constraint's own relation interval. Removes
// only points guaranteed to violate some constraint. Constraints must be in
// outer form (LE0/EQ0).
IntBox outer_contract(const IntBox& b, const Csp& csp);

// One sweep of the inner contractor: hull-join of hc4_revise over the
// complemented constraints. The removed region (b minus the result)
// satisfies every constraint. Throws UnsupportedConstraint when a
// complement does not exist.
IntBox inner_contract(const IntBox& b, const Csp& csp);

enum class ContractorKind { Outer, Inner };

// Repeats the chosen contractor until the largest per-dimension width
// reduction in a sweep drops below eps, the box empties, or kMaxSweeps
// elapse. Integer variables are tightened to integral bounds after every
// sweep.
IntBox fixpoint(ContractorKind kind, const IntBox& b, const Csp& csp,
                double eps = kFixpointEps, ContractionReport* report = nullptr);

struct PartitionTrace {
  ContractionReport outer;
  ContractionReport inner;
};

// Outer fixpoint, then inner fixpoint on its result; the differences become
// s_out and s_in, the inner result the boundary. An empty outer result flags
// the whole domain as violating.
RegionPartition partition(const IntBox& b, const Csp& csp,
                          PartitionTrace* trace = nullptr,
                          double eps = kFixpointEps);

}  // namespace ivbmc

#endif  // IVBMC_CONTRACTOR_HPP
