#ifndef IVBMC_INSTRUMENT_HPP
#define IVBMC_INSTRUMENT_HPP

#include <map>
#include <string>
#include <vector>

#include "ivbmc/contractor.hpp"
#include "ivbmc/program.hpp"

namespace ivbmc {

// Skip reason codes, machine-readable.
namespace skip_reason {
inline constexpr const char* kUnsafePlacement = "unsafe-placement";
inline constexpr const char* kWholeDomainViolates = "whole-domain-violates";
inline constexpr const char* kWholeDomainSatisfies = "whole-domain-satisfies";
inline constexpr const char* kNoContraction = "no-contraction";
inline constexpr const char* kOpaqueUpdate = "opaque-update";
inline constexpr const char* kNoConstraints = "no-constraints";
inline constexpr const char* kUnsupportedOperator = "unsupported-operator";
}  // namespace skip_reason

struct PlannedAssume {
  std::string var;
  CmpOp op = CmpOp::LE;  // LE for upper bounds, GE for lower bounds
  long long bound = 0;
};

struct InstrumentationPlan {
  bool applied = false;
  std::string skip_reason;             // set when !applied
  std::vector<PlannedAssume> assumes;  // declaration order
  bool loop_placement = false;         // end of loop body vs before asserts
  std::vector<std::string> notes;      // per-variable decisions
};

// Decides which bounds from s_boundary u s_out can be enforced safely.
// Loop variables only take a bound on the side their monotonicity makes
// safe: an upper bound for increasing variables, a lower bound for
// decreasing ones. A cut that only exists on the unsafe side (it would skip
// early iterations) refuses the whole plan. Straight-line programs restrict
// nondet initializer ranges instead, where either side is safe.
InstrumentationPlan plan_instrumentation(
    const ProgramIR& p, const Csp& csp, const RegionPartition& part,
    const std::map<std::string, Monotonicity>& mono);

// Splices the planned assume directives into a copy of the program: at the
// end of the loop body for loop plans, after the existing assumes otherwise.
// A not-applied plan returns the program unchanged.
ProgramIR instrument(const ProgramIR& p, const InstrumentationPlan& plan);

// Deterministic pretty-printing back into the mini-C grammar;
// parse_program(emit_source(p)) is structurally equal to p.
std::string emit_source(const ProgramIR& p);

}  // namespace ivbmc

#endif  // IVBMC_INSTRUMENT_HPP
