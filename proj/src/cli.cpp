#include "ivbmc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ivbmc {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
  if (!out) throw Error("cannot write file: " + path);
}

std::string percent(double ratio) {
  return Report::format_double(std::round(ratio * 1000.0) / 10.0) + "%";
}

void fill_parse_section(Report& rep, const ProgramIR& ir) {
  Report& r = rep.child("parse");
  r.put("declarations", static_cast<long long>(ir.decl_items().size()));
  r.put("assumes", static_cast<long long>(ir.assumes.size()));
  r.put("loop", ir.loop.has_value());
  r.put("asserts", static_cast<long long>(ir.asserts.size()));
}

void fill_properties_section(Report& rep, const Pipeline& pipe) {
  Report& r = rep.child("properties");
  Report& cons = r.child("constraints");
  for (size_t i = 0; i < pipe.csp.constraints.size(); ++i)
    cons.put("c" + std::to_string(i), to_string(pipe.csp.constraints[i]));
  if (!pipe.props.skipped.empty()) {
    Report& sk = r.child("skipped");
    for (const SkippedAssert& s : pipe.props.skipped) {
      Report& row = sk.child(s.text);
      row.put("reason", s.reason);
      row.put("detail", s.detail);
    }
  }
  std::string vars;
  for (const std::string& v : pipe.props.vars) {
    if (!vars.empty()) vars += ", ";
    vars += v;
  }
  r.put("variables", vars);
}

void fill_intervals_section(Report& rep, const Pipeline& pipe) {
  Report& r = rep.child("intervals");
  for (const auto& [name, vd] : pipe.domains) r.put(name, format_interval(vd.itv));
}

void fill_boxset(Report& rep, const std::string& key, const BoxSet& set) {
  Report& r = rep.child(key);
  r.put("count", static_cast<long long>(set.size()));
  for (size_t i = 0; i < set.size(); ++i)
    r.put("b" + std::to_string(i), format_box(set.boxes[i]));
}

void fill_partition_section(Report& rep, const Pipeline& pipe) {
  if (!pipe.part) return;
  const RegionPartition& part = *pipe.part;
  Report& r = rep.child("contraction");
  if (pipe.trace) {
    r.put("outer_input", format_box(pipe.trace->outer.input));
    r.put("outer_output", part.whole_domain_violates
                              ? std::string("empty")
                              : format_box(pipe.trace->outer.output));
    r.put("outer_sweeps", pipe.trace->outer.sweeps);
    if (!part.whole_domain_violates) {
      r.put("inner_output", format_box(pipe.trace->inner.output));
      r.put("inner_sweeps", pipe.trace->inner.sweeps);
    }
  }
  Report& p = rep.child("partition");
  p.put("whole_domain_violates", part.whole_domain_violates);
  fill_boxset(p, "s_out", part.s_out);
  fill_boxset(p, "s_in", part.s_in);
  fill_boxset(p, "s_boundary", part.s_boundary);
}

void fill_plan_section(Report& rep, const Pipeline& pipe) {
  Report& r = rep.child("plan");
  r.put("applied", pipe.plan.applied);
  if (!pipe.plan.applied) {
    r.put("reason", pipe.plan.skip_reason.empty() ? pipe.skip
                                                  : pipe.plan.skip_reason);
  } else {
    r.put("placement", pipe.plan.loop_placement ? "end-of-loop-body"
                                                : "before-asserts");
    Report& as = r.child("assumes");
    for (const PlannedAssume& a : pipe.plan.assumes)
      as.put(a.var, a.var + " " + to_string(a.op) + " " + std::to_string(a.bound));
  }
  if (!pipe.plan.notes.empty()) {
    Report& notes = r.child("notes");
    for (size_t i = 0; i < pipe.plan.notes.size(); ++i)
      notes.put("n" + std::to_string(i), pipe.plan.notes[i]);
  }
  if (!pipe.mono.empty()) {
    Report& m = r.child("monotonicity");
    for (const auto& [var, mono] : pipe.mono) m.put(var, to_string(mono));
  }
}

void fill_verdict_section(Report& rep, const std::string& key, const Verdict& v,
                          bool timings) {
  Report& r = rep.child(key);
  r.put("verdict", to_string(v.cls));
  r.put("k_reached", v.k_reached);
  r.put("completion", v.completion);
  Report& s = r.child("stats");
  s.put("states_visited", v.stats.states_visited);
  s.put("paths_explored", v.stats.paths_explored);
  s.put("max_depth", v.stats.max_depth);
  if (timings)
    std::cerr << key << " wall_seconds: " << v.stats.wall_seconds << "\n";
  if (v.cex) {
    Report& c = r.child("counterexample");
    c.put("iterations", v.cex->iterations);
    c.put("failed_assert_line", v.cex->failed_assert_line);
    Report& init = c.child("initial");
    for (size_t i = 0; i < v.cex->var_names.size(); ++i)
      init.put(v.cex->var_names[i], v.cex->initial_values[i]);
    Report& final_state = c.child("final");
    const TraceState& last = v.cex->states.back();
    for (size_t i = 0; i < v.cex->var_names.size(); ++i)
      final_state.put(v.cex->var_names[i], last.values[i]);
    c.put("trace_length", static_cast<long long>(v.cex->states.size()));
  }
}

CmdResult finish(Report rep, const Options&, int code) {
  return {std::move(rep), code};
}

CmdResult error_result(const Options& opt, const std::string& phase,
                       const std::string& message) {
  Report rep;
  rep.put("status", "error");
  rep.put("phase", phase);
  rep.put("message", message);
  return finish(std::move(rep), opt, 3);
}

}  // namespace

Pipeline run_pipeline(const ProgramIR& ir, double eps) {
  Pipeline pipe;
  pipe.ir = ir;
  pipe.instrumented = ir;
  pipe.props = analyze_properties(ir);
  pipe.domains = analyze_intervals(ir);
  pipe.csp = build_csp(ir, pipe.props, pipe.domains);

  if (pipe.csp.constraints.empty()) {
    pipe.status = "skipped";
    pipe.skip = pipe.props.skipped.empty() ? skip_reason::kNoConstraints
                                           : skip_reason::kUnsupportedOperator;
    pipe.plan.skip_reason = pipe.skip;
    return pipe;
  }

  for (const std::string& var : pipe.props.vars)
    pipe.mono[var] = monotonicity_check(ir, var, pipe.domains);

  PartitionTrace trace;
  try {
    pipe.part = partition(pipe.csp.domain, pipe.csp, &trace, eps);
    pipe.trace = trace;
  } catch (const UnsupportedConstraint&) {
    // conservative fallback: the original program passes through unchanged
    pipe.status = "skipped";
    pipe.skip = skip_reason::kUnsupportedOperator;
    pipe.plan.skip_reason = pipe.skip;
    return pipe;
  }

  pipe.plan = plan_instrumentation(ir, pipe.csp, *pipe.part, pipe.mono);
  pipe.instrumented = instrument(ir, pipe.plan);
  return pipe;
}

CmdResult cmd_contract(const std::string& path, const Options& opt) {
  Report rep;
  rep.put("command", "contract");
  rep.put("input", path);
  try {
    ProgramIR ir = parse_program(read_file(path));
    Pipeline pipe = run_pipeline(ir, opt.eps);
    fill_parse_section(rep, pipe.ir);
    fill_properties_section(rep, pipe);
    fill_intervals_section(rep, pipe);
    if (pipe.part) {
      Report& csp = rep.child("csp");
      csp.put("domain", format_box(pipe.csp.domain));
      fill_partition_section(rep, pipe);
    }
    rep.put("status", pipe.status == "ok" ? "ok" : "SKIPPED");
    if (pipe.status != "ok") rep.put("reason", pipe.skip);
    return finish(std::move(rep), opt, 0);
  } catch (const ParseError& e) {
    return error_result(opt, "parse", e.what());
  } catch (const EmptyDomainError& e) {
    return error_result(opt, "intervals", e.what());
  } catch (const Error& e) {
    return error_result(opt, "contract", e.what());
  }
}

CmdResult cmd_instrument(const std::string& path, const Options& opt) {
  Report rep;
  rep.put("command", "instrument");
  rep.put("input", path);
  std::string out_path = opt.out_path.empty() ? path + ".instr.c" : opt.out_path;
  try {
    ProgramIR ir = parse_program(read_file(path));
    Pipeline pipe = run_pipeline(ir, opt.eps);
    fill_parse_section(rep, pipe.ir);
    fill_plan_section(rep, pipe);
    std::string source = emit_source(pipe.instrumented);
    write_file(out_path, source);
    rep.put("output", out_path);
    rep.put("identity", !pipe.plan.applied);
    rep.put("status", pipe.plan.applied ? "ok" : "SKIPPED");
    if (!pipe.plan.applied)
      rep.put("reason", pipe.plan.skip_reason.empty() ? pipe.skip
                                                      : pipe.plan.skip_reason);
    return finish(std::move(rep), opt, 0);
  } catch (const ParseError& e) {
    return error_result(opt, "parse", e.what());
  } catch (const EmptyDomainError& e) {
    return error_result(opt, "intervals", e.what());
  } catch (const Error& e) {
    return error_result(opt, "instrument", e.what());
  }
}

CmdResult cmd_verify(const std::string& path, const Options& opt) {
  Report rep;
  rep.put("command", "verify");
  rep.put("input", path);
  rep.put("k_max", opt.k_max);
  try {
    ProgramIR ir = parse_program(read_file(path));
    NondetPolicy policy{opt.nondet_cap, 65536};
    Verdict v = verify_incremental(ir, opt.k_max, policy);
    fill_verdict_section(rep, "result", v, opt.timings);
    rep.put("status", "ok");
    int code = v.cls == VerdictClass::Safe     ? 0
               : v.cls == VerdictClass::Unsafe ? 1
                                               : 2;
    return finish(std::move(rep), opt, code);
  } catch (const ParseError& e) {
    return error_result(opt, "parse", e.what());
  } catch (const EmptyDomainError& e) {
    return error_result(opt, "intervals", e.what());
  } catch (const ConfigError& e) {
    return error_result(opt, "policy", e.what());
  } catch (const Error& e) {
    return error_result(opt, "verify", e.what());
  }
}

CmdResult cmd_bench(const std::string& dir, const Options& opt) {
  Report rep;
  rep.put("command", "bench");
  rep.put("corpus", dir);
  rep.put("k_max", opt.k_max);
  try {
    if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".c")
        files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());

    Report& table = rep.child("files");
    long long score = 0;
    unsigned long long states_orig = 0, states_instr = 0;
    int correct = 0, incorrect = 0, unknown = 0, skipped = 0, divergences = 0;

    for (const std::string& file : files) {
      std::string name = fs::path(file).filename().string();
      Report& row = table.child(name);
      std::string expect_path = file + ".expect";
      if (!fs::exists(expect_path)) {
        row.put("status", "skipped");
        row.put("warning", "missing expectation sidecar " + name + ".expect");
        ++skipped;
        continue;
      }
      std::string expect_text = read_file(expect_path);
      std::string expected;
      if (expect_text.find("unsafe") != std::string::npos)
        expected = "unsafe";
      else if (expect_text.find("safe") != std::string::npos)
        expected = "safe";
      else {
        row.put("status", "skipped");
        row.put("warning", "unreadable expectation: " + expect_text);
        ++skipped;
        continue;
      }
      try {
        ProgramIR ir = parse_program(read_file(file));
        Pipeline pipe = run_pipeline(ir, opt.eps);
        NondetPolicy policy{opt.nondet_cap, 65536};
        RunComparison cmp =
            compare_runs(pipe.ir, pipe.instrumented, opt.k_max, policy);
        row.put("expected", expected);
        row.put("verdict", to_string(cmp.instrumented.cls));
        row.put("verdict_original", to_string(cmp.original.cls));
        row.put("instrumented", pipe.plan.applied);
        if (cmp.verdict_divergence) {
          row.put("VERDICT_DIVERGENCE", true);
          ++divergences;
        }
        row.put("states_original", cmp.original.stats.states_visited);
        row.put("states_instrumented", cmp.instrumented.stats.states_visited);
        row.put("reduction", percent(1.0 - cmp.state_ratio));
        states_orig += cmp.original.stats.states_visited;
        states_instr += cmp.instrumented.stats.states_visited;

        long long file_score = 0;
        VerdictClass got = cmp.instrumented.cls;
        if (got == VerdictClass::Safe)
          file_score = expected == "safe" ? 2 : -32;
        else if (got == VerdictClass::Unsafe)
          file_score = expected == "unsafe" ? 1 : -16;
        if (got == VerdictClass::Unknown)
          ++unknown;
        else if ((got == VerdictClass::Safe) == (expected == "safe"))
          ++correct;
        else {
          ++incorrect;
          row.put("flagged", "incorrect verdict");
        }
        row.put("score", file_score);
        score += file_score;
      } catch (const Error& e) {
        row.put("status", "error");
        row.put("message", e.what());
        ++skipped;
      }
    }

    Report& total = rep.child("total");
    total.put("files", static_cast<long long>(files.size()));
    total.put("correct", correct);
    total.put("incorrect", incorrect);
    total.put("unknown", unknown);
    total.put("skipped", skipped);
    total.put("verdict_divergences", divergences);
    total.put("score", score);
    total.put("states_original", states_orig);
    total.put("states_instrumented", states_instr);
    double reduction =
        states_orig == 0 ? 0.0
                         : 1.0 - static_cast<double>(states_instr) /
                                     static_cast<double>(states_orig);
    total.put("state_reduction", percent(reduction));
    rep.put("status", "ok");
    return finish(std::move(rep), opt, 0);
  } catch (const Error& e) {
    return error_result(opt, "bench", e.what());
  }
}

}  // namespace ivbmc
