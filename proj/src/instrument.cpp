#include "ivbmc/instrument.hpp"

#include <cmath>

namespace ivbmc {

namespace {

// Per-variable hull of the region the checker still has to search.
Interval keep_interval(const RegionPartition& part, size_t dim) {
  Interval keep = Interval::empty();
  for (const IntBox& b : part.s_boundary.boxes) keep = hull(keep, b.dim(dim));
  for (const IntBox& b : part.s_out.boxes) keep = hull(keep, b.dim(dim));
  return keep;
}

bool representable_bound(double v) {
  return std::isfinite(v) && v == std::floor(v) &&
         std::fabs(v) <= 9.007199254740992e15;
}

}  // namespace

InstrumentationPlan plan_instrumentation(
    const ProgramIR& p, const Csp& csp, const RegionPartition& part,
    const std::map<std::string, Monotonicity>& mono) {
  InstrumentationPlan plan;

  if (csp.constraints.empty()) {
    plan.skip_reason = skip_reason::kNoConstraints;
    return plan;
  }
  if (part.whole_domain_violates) {
    plan.skip_reason = skip_reason::kWholeDomainViolates;
    return plan;
  }
  if (p.loop) {
    for (const BodyStmt& s : p.loop->body) {
      const Update* u = std::get_if<Update>(&s);
      if (u && u->kind == UpdateKind::Opaque) {
        plan.skip_reason = skip_reason::kOpaqueUpdate;
        plan.notes.push_back("opaque update of '" + u->target + "' at line " +
                             std::to_string(u->line));
        return plan;
      }
    }
  }
  if (part.s_boundary.empty() && part.s_out.empty()) {
    // the inner contractor removed the entire domain: the property holds
    // everywhere, nothing needs instrumenting
    plan.skip_reason = skip_reason::kWholeDomainSatisfies;
    return plan;
  }

  struct Cut {
    std::string var;
    CmpOp op;
    long long bound;
  };
  std::vector<Cut> eligible;
  bool any_cut = false;

  for (size_t i = 0; i < csp.vars.size(); ++i) {
    const std::string& name = csp.vars[i].name;
    const Interval& dom = part.original.dim(i);
    Interval keep = keep_interval(part, i);
    if (keep.is_empty()) continue;
    const bool cut_upper = keep.hi() < dom.hi();
    const bool cut_lower = keep.lo() > dom.lo();
    if (!cut_upper && !cut_lower) continue;
    any_cut = true;

    if (!p.loop || !p.updates_in_loop(name)) {
      // straight-line case (or a variable the loop never touches): the cut
      // restricts initializer ranges, both sides are safe
      const DeclItem* d = p.find_decl(name);
      if (!d || !d->nondet) {
        plan.notes.push_back("cut on '" + name + "' skipped: not a nondet input");
        continue;
      }
      if (cut_upper && representable_bound(keep.hi()))
        eligible.push_back({name, CmpOp::LE, static_cast<long long>(keep.hi())});
      if (cut_lower && representable_bound(keep.lo()))
        eligible.push_back({name, CmpOp::GE, static_cast<long long>(keep.lo())});
      continue;
    }

    auto it = mono.find(name);
    Monotonicity m = it == mono.end() ? Monotonicity::Unknown : it->second;
    if (m == Monotonicity::MonotoneIncreasing && cut_upper &&
        representable_bound(keep.hi())) {
      eligible.push_back({name, CmpOp::LE, static_cast<long long>(keep.hi())});
      if (cut_lower)
        plan.notes.push_back("lower-side cut on increasing '" + name +
                             "' skipped (would skip early iterations)");
    } else if (m == Monotonicity::MonotoneDecreasing && cut_lower &&
               representable_bound(keep.lo())) {
      eligible.push_back({name, CmpOp::GE, static_cast<long long>(keep.lo())});
      if (cut_upper)
        plan.notes.push_back("upper-side cut on decreasing '" + name +
                             "' skipped (would skip early iterations)");
    } else {
      plan.notes.push_back("cut on '" + name + "' unsafe: " + to_string(m) +
                           (cut_upper && cut_lower ? ", both sides cut"
                            : cut_upper            ? ", upper cut"
                                                   : ", lower cut"));
    }
  }

  if (eligible.empty()) {
    plan.skip_reason =
        any_cut ? skip_reason::kUnsafePlacement : skip_reason::kNoContraction;
    return plan;
  }

  // order the emitted assumes by declaration order
  for (const DeclItem* d : p.decl_items()) {
    for (const Cut& c : eligible) {
      if (c.var == d->name)
        plan.assumes.push_back({c.var, c.op, c.bound});
    }
  }
  plan.applied = true;
  plan.loop_placement = p.loop.has_value();
  return plan;
}

ProgramIR instrument(const ProgramIR& p, const InstrumentationPlan& plan) {
  ProgramIR out = p;
  if (!plan.applied) return out;
  for (const PlannedAssume& pa : plan.assumes) {
    AssumeStmt a;
    a.cmp.lhs = PExpr::variable(pa.var);
    a.cmp.op = pa.op;
    a.cmp.rhs = PExpr::constant(pa.bound);
    a.callee = "assume";
    a.synthetic = true;
    if (plan.loop_placement)
      out.loop->body.emplace_back(std::move(a));
    else
      out.assumes.push_back(std::move(a));
  }
  return out;
}

namespace {

std::string type_name(VarType t) {
  return t == VarType::UInt32 ? "unsigned int" : "int";
}

void emit_assume(const AssumeStmt& a, const std::string& indent, std::string& out) {
  out += indent + a.callee + "(" + to_string(a.cmp) + ");\n";
}

}  // namespace

std::string emit_source(const ProgramIR& p) {
  std::string out;
  out += "#include <assert.h>\n";
  out += "int main() {\n";
  const std::string ind = "    ";
  for (const DeclGroup& g : p.decls) {
    out += ind + type_name(g.type) + " ";
    for (size_t i = 0; i < g.items.size(); ++i) {
      const DeclItem& d = g.items[i];
      if (i) out += ", ";
      out += d.name + " = ";
      out += d.nondet ? d.nondet_callee + "()" : std::to_string(d.init);
    }
    out += ";\n";
  }
  for (const AssumeStmt& a : p.assumes) emit_assume(a, ind, out);
  if (p.loop) {
    const LoopInfo& l = *p.loop;
    out += ind + "while (";
    if (l.guard) {
      out += to_string(*l.guard);
      if (l.nondet_continue) out += " && " + l.nondet_callee + "()";
    } else {
      out += l.nondet_callee + "()";
    }
    out += ") {\n";
    for (const BodyStmt& s : l.body) {
      if (const Update* u = std::get_if<Update>(&s))
        out += ind + ind + u->target + " = " + to_string(u->raw_rhs) + ";\n";
      else
        emit_assume(std::get<AssumeStmt>(s), ind + ind, out);
    }
    out += ind + "}\n";
  }
  for (const AssertStmt& a : p.asserts)
    out += ind + "assert(" + to_string(a.cmp) + ");\n";
  out += ind + "return " + std::to_string(p.return_value) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace ivbmc
