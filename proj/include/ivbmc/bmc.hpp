#ifndef IVBMC_BMC_HPP
#define IVBMC_BMC_HPP

#include <optional>
#include <string>
#include <vector>

#include "ivbmc/program.hpp"

namespace ivbmc {

enum class VerdictClass { Safe, Unsafe, Unknown };

struct TraceState {
  std::string pc;
  std::vector<long long> values;  // aligned with Counterexample::var_names
};

struct Counterexample {
  std::vector<std::string> var_names;
  std::vector<long long> initial_values;
  int iterations = 0;  // loop iterations executed before the exit
  int failed_assert_line = 0;
  std::vector<TraceState> states;
};

struct ExplorationStats {
  unsigned long long states_visited = 0;
  unsigned long long paths_explored = 0;
  int max_depth = 0;
  double wall_seconds = 0.0;

  ExplorationStats& operator+=(const ExplorationStats& o);
};

struct Verdict {
  VerdictClass cls = VerdictClass::Unknown;
  std::optional<Counterexample> cex;
  int k_reached = 0;
  bool completion = false;  // the completion threshold was reached
  ExplorationStats stats;
};

// Bounds every nondet initializer to a finite, lexicographically enumerated
// sample set drawn from the variable's domain interval. Exceeding a budget
// before the exploration can conclude raises ConfigError.
struct NondetPolicy {
  long long cap = 4096;           // samples per nondet variable
  long long max_frontier = 65536; // materialized start states for loop programs
};

enum class ExploreOutcome { Bug, AllComplete, BoundHit };

struct ExploreResult {
  ExploreOutcome outcome = ExploreOutcome::AllComplete;
  std::optional<Counterexample> cex;
  ExplorationStats stats;
};

// Depth-first enumeration of every execution with at most k loop iterations.
// Failed assumes prune the path silently; a failed assert returns the bug
// with a replayable trace; AllComplete means every path terminated within
// the bound (the completion threshold), BoundHit that some path was cut off.
ExploreResult explore(const ProgramIR& p, int k, const NondetPolicy& policy);

// Increments k from 0: a bug is Unsafe, completion is Safe, exhausting k_max
// is Unknown. Stats accumulate over all exploration rounds.
Verdict verify_incremental(const ProgramIR& p, int k_max,
                           const NondetPolicy& policy);

// Re-executes a counterexample concretely; true iff the trace is valid and
// its final state violates an assert.
bool replay_counterexample(const ProgramIR& p, const Counterexample& cex);

struct RunComparison {
  Verdict original;
  Verdict instrumented;
  bool verdict_divergence = false;
  double state_ratio = 1.0;  // instrumented / original
  double path_ratio = 1.0;
};

// Verifies both programs under the same policy and reports verdict equality
// plus the pruning ratios. A verdict class mismatch is flagged, never
// swallowed.
RunComparison compare_runs(const ProgramIR& original,
                           const ProgramIR& instrumented, int k_max,
                           const NondetPolicy& policy);

std::string to_string(VerdictClass c);

}  // namespace ivbmc

#endif  // IVBMC_BMC_HPP
