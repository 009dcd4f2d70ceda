#include "ivbmc/bmc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace ivbmc {

ExplorationStats& ExplorationStats::operator+=(const ExplorationStats& o) {
  states_visited += o.states_visited;
  paths_explored += o.paths_explored;
  max_depth = std::max(max_depth, o.max_depth);
  wall_seconds += o.wall_seconds;
  return *this;
}

std::string to_string(VerdictClass c) {
  switch (c) {
    case VerdictClass::Safe: return "SAFE";
    case VerdictClass::Unsafe: return "UNSAFE";
    case VerdictClass::Unknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

using Values = std::vector<long long>;

long long checked_arith(PKind k, long long a, long long b, int line) {
  long long r = 0;
  bool ovf = false;
  switch (k) {
    case PKind::Add: ovf = __builtin_add_overflow(a, b, &r); break;
    case PKind::Sub: ovf = __builtin_sub_overflow(a, b, &r); break;
    case PKind::Mul: ovf = __builtin_mul_overflow(a, b, &r); break;
    case PKind::Div:
      if (b == 0)
        throw HarnessError("division by zero at line " + std::to_string(line));
      if (a == std::numeric_limits<long long>::min() && b == -1) ovf = true;
      else r = a / b;
      break;
    default: break;
  }
  if (ovf)
    throw HarnessError("64-bit overflow in concrete execution at line " +
                       std::to_string(line));
  return r;
}

long long eval_expr(const PExpr& e, const Values& vals, int line) {
  switch (e.kind) {
    case PKind::Const: return e.value;
    case PKind::Var: return vals[static_cast<size_t>(e.var_idx)];
    case PKind::Neg: {
      long long v = eval_expr(e.kids[0], vals, line);
      if (v == std::numeric_limits<long long>::min())
        throw HarnessError("64-bit overflow in concrete execution at line " +
                           std::to_string(line));
      return -v;
    }
    default:
      return checked_arith(e.kind, eval_expr(e.kids[0], vals, line),
                           eval_expr(e.kids[1], vals, line), line);
  }
}

bool eval_cmp(const Comparison& c, const Values& vals) {
  long long l = eval_expr(c.lhs, vals, c.line);
  long long r = eval_expr(c.rhs, vals, c.line);
  switch (c.op) {
    case CmpOp::LT: return l < r;
    case CmpOp::LE: return l <= r;
    case CmpOp::GT: return l > r;
    case CmpOp::GE: return l >= r;
    case CmpOp::EQ: return l == r;
    case CmpOp::NE: return l != r;
  }
  return false;
}

void resolve_expr(PExpr& e, const std::map<std::string, int>& index) {
  if (e.kind == PKind::Var) e.var_idx = index.at(e.var);
  for (PExpr& k : e.kids) resolve_expr(k, index);
}

struct NondetVar {
  int idx;            // variable slot
  long long lo, hi;   // inclusive integer range
  std::string name;
};

// The explicit-state engine. Compiles the IR once (variable slots resolved),
// derives nondet sample ranges from the domain map, and explores the
// execution tree depth-major so the first bug found is the one of minimal
// depth, then minimal valuation, independent of the bound.
class Engine {
 public:
  Engine(const ProgramIR& p, const NondetPolicy& policy)
      : ir_(p), policy_(policy) {
    for (const DeclGroup& g : ir_.decls)
      for (const DeclItem& d : g.items) {
        index_[d.name] = static_cast<int>(names_.size());
        names_.push_back(d.name);
        base_values_.push_back(d.nondet ? 0 : d.init);
      }
    auto fix = [&](Comparison& c) {
      resolve_expr(c.lhs, index_);
      resolve_expr(c.rhs, index_);
    };
    for (AssumeStmt& a : ir_.assumes) fix(a.cmp);
    for (AssertStmt& a : ir_.asserts) fix(a.cmp);
    if (ir_.loop) {
      if (ir_.loop->guard) fix(*ir_.loop->guard);
      for (BodyStmt& s : ir_.loop->body) {
        if (Update* u = std::get_if<Update>(&s)) {
          resolve_expr(u->raw_rhs, index_);
          target_idx_.push_back(index_.at(u->target));
        } else {
          fix(std::get<AssumeStmt>(s).cmp);
          target_idx_.push_back(-1);
        }
      }
    }
    DomainMap domains = analyze_intervals(ir_);
    for (const DeclGroup& g : ir_.decls) {
      for (const DeclItem& d : g.items) {
        if (!d.nondet) continue;
        const Interval& itv = domains.at(d.name).itv;
        NondetVar nv;
        nv.idx = index_.at(d.name);
        nv.name = d.name;
        nv.lo = clamp_bound(itv.is_empty() ? 1 : itv.lo(), d.name);
        nv.hi = clamp_bound(itv.is_empty() ? 0 : itv.hi(), d.name);
        nondets_.push_back(nv);
      }
    }
  }

  ExploreResult explore(int k) {
    auto t0 = std::chrono::steady_clock::now();
    ExploreResult res;
    stats_ = ExplorationStats{};
    if (ir_.loop)
      res = explore_loop(k);
    else
      res = explore_straight();
    auto t1 = std::chrono::steady_clock::now();
    stats_.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    res.stats = stats_;
    return res;
  }

 private:
  static long long clamp_bound(double v, const std::string& name) {
    if (std::isnan(v) || std::fabs(v) > 9.0e15)
      throw ConfigError("nondet variable '" + name +
                        "' has an unbounded domain; add assume() bounds");
    return static_cast<long long>(v);
  }

  // Lexicographic odometer over the nondet ranges, declaration order, last
  // variable fastest. Advancing any variable past the policy cap raises
  // ConfigError, so an early bug can still be found in a huge space while a
  // completion claim over one is refused.
  bool first_valuation(Values& v) {
    v = base_values_;
    for (const NondetVar& nv : nondets_) {
      if (nv.lo > nv.hi) return false;  // empty sample set: no executions
      v[static_cast<size_t>(nv.idx)] = nv.lo;
    }
    return true;
  }

  bool next_valuation(Values& v) {
    for (size_t i = nondets_.size(); i-- > 0;) {
      const NondetVar& nv = nondets_[i];
      long long& slot = v[static_cast<size_t>(nv.idx)];
      if (slot < nv.hi) {
        ++slot;
        if (slot - nv.lo >= policy_.cap)
          throw ConfigError("nondet range for '" + nv.name + "' exceeds the " +
                            std::to_string(policy_.cap) +
                            "-sample policy cap; add assume() bounds or raise "
                            "--nondet-cap");
        return true;
      }
      slot = nv.lo;
    }
    return false;
  }

  // Runs the pre-loop assumes; false means the path is pruned.
  bool run_assumes(const Values& v) {
    for (const AssumeStmt& a : ir_.assumes) {
      ++stats_.states_visited;
      if (!eval_cmp(a.cmp, v)) return false;
    }
    return true;
  }

  // Evaluates the asserts at an exit; fills `failed_line` on violation.
  bool run_asserts(const Values& v, int& failed_line) {
    for (const AssertStmt& a : ir_.asserts) {
      ++stats_.states_visited;
      if (!eval_cmp(a.cmp, v)) {
        failed_line = a.line;
        return false;
      }
    }
    return true;
  }

  ExploreResult explore_straight() {
    ExploreResult res;
    Values v;
    if (!first_valuation(v)) {
      res.outcome = ExploreOutcome::AllComplete;
      return res;
    }
    while (true) {
      ++stats_.states_visited;  // initial state
      ++stats_.paths_explored;
      if (run_assumes(v)) {
        int line = 0;
        if (!run_asserts(v, line)) {
          res.outcome = ExploreOutcome::Bug;
          res.cex = build_cex(v, 0, line);
          return res;
        }
      }
      if (!next_valuation(v)) break;
    }
    res.outcome = ExploreOutcome::AllComplete;
    return res;
  }

  struct Path {
    Values initial;
    Values values;
  };

  // Executes one loop-body pass; false when a body assume pruned the path.
  bool run_body(Values& v) {
    const LoopInfo& l = *ir_.loop;
    for (size_t i = 0; i < l.body.size(); ++i) {
      ++stats_.states_visited;
      if (const Update* u = std::get_if<Update>(&l.body[i])) {
        v[static_cast<size_t>(target_idx_[i])] = eval_expr(u->raw_rhs, v, u->line);
      } else {
        if (!eval_cmp(std::get<AssumeStmt>(l.body[i]).cmp, v)) return false;
      }
    }
    return true;
  }

  ExploreResult explore_loop(int k) {
    ExploreResult res;
    const LoopInfo& l = *ir_.loop;

    std::vector<Path> frontier;
    Values v;
    if (first_valuation(v)) {
      while (true) {
        ++stats_.states_visited;  // initial state
        if (run_assumes(v)) {
          if (static_cast<long long>(frontier.size()) >= policy_.max_frontier)
            throw ConfigError(
                "loop program start-state count exceeds the frontier budget (" +
                std::to_string(policy_.max_frontier) + ")");
          frontier.push_back({v, v});
        } else {
          ++stats_.paths_explored;  // pruned before the loop
        }
        if (!next_valuation(v)) break;
      }
    }

    bool bound_hit = false;
    for (int depth = 0; !frontier.empty(); ++depth) {
      std::vector<Path> next;
      next.reserve(frontier.size());
      for (Path& path : frontier) {
        ++stats_.states_visited;  // guard decision point
        bool guard_holds = !l.guard || eval_cmp(*l.guard, path.values);
        bool exit_taken = !guard_holds || l.nondet_continue;
        if (exit_taken) {
          ++stats_.paths_explored;
          int line = 0;
          if (!run_asserts(path.values, line)) {
            res.outcome = ExploreOutcome::Bug;
            res.cex = build_cex(path.initial, depth, line);
            return res;
          }
        }
        if (guard_holds) {
          if (depth >= k) {
            bound_hit = true;  // next iteration lies beyond the bound
          } else {
            stats_.max_depth = std::max(stats_.max_depth, depth + 1);
            if (run_body(path.values))
              next.push_back(std::move(path));
            else
              ++stats_.paths_explored;  // pruned by a body assume
          }
        }
      }
      frontier = std::move(next);
    }
    res.outcome = bound_hit ? ExploreOutcome::BoundHit : ExploreOutcome::AllComplete;
    return res;
  }

  // Replays one path concretely, recording every state.
  Counterexample build_cex(const Values& initial, int iterations, int line) {
    Counterexample cex;
    cex.var_names = names_;
    cex.initial_values = initial;
    cex.iterations = iterations;
    cex.failed_assert_line = line;
    Values v = initial;
    cex.states.push_back({"init", v});
    for (const AssumeStmt& a : ir_.assumes)
      cex.states.push_back({"assume:" + std::to_string(a.line), v});
    if (ir_.loop) {
      const LoopInfo& l = *ir_.loop;
      for (int it = 0; it < iterations; ++it) {
        cex.states.push_back({"guard", v});
        for (size_t i = 0; i < l.body.size(); ++i) {
          if (const Update* u = std::get_if<Update>(&l.body[i])) {
            v[static_cast<size_t>(target_idx_[i])] =
                eval_expr(u->raw_rhs, v, u->line);
            cex.states.push_back({"update:" + std::to_string(u->line), v});
          } else {
            const AssumeStmt& a = std::get<AssumeStmt>(l.body[i]);
            cex.states.push_back({"assume:" + std::to_string(a.line), v});
          }
        }
      }
      cex.states.push_back({"exit", v});
    }
    cex.states.push_back({"assert:" + std::to_string(line), v});
    return cex;
  }

  ProgramIR ir_;  // private copy with resolved variable slots
  NondetPolicy policy_;
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  Values base_values_;
  std::vector<NondetVar> nondets_;
  std::vector<int> target_idx_;  // per body statement; -1 for assumes
  ExplorationStats stats_;
};

}  // namespace

ExploreResult explore(const ProgramIR& p, int k, const NondetPolicy& policy) {
  if (k < 0) throw Error("explore: k must be non-negative");
  Engine engine(p, policy);
  return engine.explore(k);
}

Verdict verify_incremental(const ProgramIR& p, int k_max,
                           const NondetPolicy& policy) {
  if (k_max < 0) throw Error("verify_incremental: k_max must be non-negative");
  Engine engine(p, policy);
  Verdict verdict;
  for (int k = 0; k <= k_max; ++k) {
    ExploreResult r = engine.explore(k);
    verdict.stats += r.stats;
    verdict.k_reached = k;
    if (r.outcome == ExploreOutcome::Bug) {
      verdict.cls = VerdictClass::Unsafe;
      verdict.cex = std::move(r.cex);
      return verdict;
    }
    if (r.outcome == ExploreOutcome::AllComplete) {
      verdict.cls = VerdictClass::Safe;
      verdict.completion = true;
      return verdict;
    }
  }
  verdict.cls = VerdictClass::Unknown;
  return verdict;
}

bool replay_counterexample(const ProgramIR& p, const Counterexample& cex) {
  ProgramIR ir = p;
  std::map<std::string, int> index;
  std::vector<std::string> names;
  for (const DeclGroup& g : ir.decls)
    for (const DeclItem& d : g.items) {
      index[d.name] = static_cast<int>(names.size());
      names.push_back(d.name);
    }
  if (names != cex.var_names ||
      cex.initial_values.size() != names.size())
    return false;
  auto fix = [&](Comparison& c) {
    resolve_expr(c.lhs, index);
    resolve_expr(c.rhs, index);
  };
  for (AssumeStmt& a : ir.assumes) fix(a.cmp);
  for (AssertStmt& a : ir.asserts) fix(a.cmp);
  std::vector<int> targets;
  if (ir.loop) {
    if (ir.loop->guard) fix(*ir.loop->guard);
    for (BodyStmt& s : ir.loop->body) {
      if (Update* u = std::get_if<Update>(&s)) {
        resolve_expr(u->raw_rhs, index);
        targets.push_back(index.at(u->target));
      } else {
        fix(std::get<AssumeStmt>(s).cmp);
        targets.push_back(-1);
      }
    }
  }

  Values v = cex.initial_values;
  // constant initializers must match the trace
  size_t slot = 0;
  for (const DeclGroup& g : ir.decls)
    for (const DeclItem& d : g.items) {
      if (!d.nondet && v[slot] != d.init) return false;
      ++slot;
    }
  for (const AssumeStmt& a : ir.assumes)
    if (!eval_cmp(a.cmp, v)) return false;
  if (cex.iterations > 0 && !ir.loop) return false;
  if (ir.loop) {
    const LoopInfo& l = *ir.loop;
    for (int it = 0; it < cex.iterations; ++it) {
      if (l.guard && !eval_cmp(*l.guard, v)) return false;
      for (size_t i = 0; i < l.body.size(); ++i) {
        if (const Update* u = std::get_if<Update>(&l.body[i]))
          v[static_cast<size_t>(targets[i])] = eval_expr(u->raw_rhs, v, u->line);
        else if (!eval_cmp(std::get<AssumeStmt>(l.body[i]).cmp, v))
          return false;
      }
    }
    // the exit itself must be legal: guard failed or a nondet choice existed
    bool guard_holds = !l.guard || eval_cmp(*l.guard, v);
    if (guard_holds && !l.nondet_continue) return false;
  }
  for (const AssertStmt& a : ir.asserts)
    if (!eval_cmp(a.cmp, v)) return true;  // the violation replays
  return false;
}

RunComparison compare_runs(const ProgramIR& original,
                           const ProgramIR& instrumented, int k_max,
                           const NondetPolicy& policy) {
  RunComparison cmp;
  cmp.original = verify_incremental(original, k_max, policy);
  cmp.instrumented = verify_incremental(instrumented, k_max, policy);
  cmp.verdict_divergence = cmp.original.cls != cmp.instrumented.cls;
  if (cmp.original.stats.states_visited > 0)
    cmp.state_ratio = static_cast<double>(cmp.instrumented.stats.states_visited) /
                      static_cast<double>(cmp.original.stats.states_visited);
  if (cmp.original.stats.paths_explored > 0)
    cmp.path_ratio = static_cast<double>(cmp.instrumented.stats.paths_explored) /
                     static_cast<double>(cmp.original.stats.paths_explored);
  return cmp;
}

}  // namespace ivbmc
