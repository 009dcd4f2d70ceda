#ifndef IVBMC_CLI_HPP
#define IVBMC_CLI_HPP

#include <optional>
#include <string>

#include "ivbmc/bmc.hpp"
#include "ivbmc/instrument.hpp"
#include "ivbmc/report.hpp"

namespace ivbmc {

struct Options {
  int k_max = 1000;
  long long nondet_cap = 4096;
  double eps = kFixpointEps;
  std::string format = "text";  // "text" | "machine"
  std::string out_path;         // instrument output; default <input>.instr.c
  bool timings = false;         // wall-clock lines go to stderr, never reports
};

struct CmdResult {
  Report report;
  int exit_code = 0;
};

// Everything the pipeline derives from one source file. Steps after a skip
// are left empty; `status` is "ok", "skipped" or "error".
struct Pipeline {
  ProgramIR ir;
  PropertyAnalysis props;
  DomainMap domains;
  Csp csp;
  std::optional<RegionPartition> part;
  std::optional<PartitionTrace> trace;
  std::map<std::string, Monotonicity> mono;
  InstrumentationPlan plan;
  ProgramIR instrumented;
  std::string status = "ok";
  std::string skip = "";
};

// Parse, analyze, contract, plan and instrument (in memory).
Pipeline run_pipeline(const ProgramIR& ir, double eps);

// Subcommands. Exit codes: contract/instrument 0 on success (a skip is
// data, not an error); verify 0=SAFE 1=UNSAFE 2=UNKNOWN; any operational
// error is 3.
CmdResult cmd_contract(const std::string& path, const Options& opt);
CmdResult cmd_instrument(const std::string& path, const Options& opt);
CmdResult cmd_verify(const std::string& path, const Options& opt);
CmdResult cmd_bench(const std::string& dir, const Options& opt);

std::string read_file(const std::string& path);

}  // namespace ivbmc

#endif  // IVBMC_CLI_HPP
