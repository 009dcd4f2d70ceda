#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ivbmc/cli.hpp"

using namespace ivbmc;

namespace {

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "Report format: text or machine")
      ->check(CLI::IsMember({"text", "machine"}));
  cmd->add_option("--eps", opt.eps, "Fixpoint width-reduction threshold");
  cmd->add_flag("--timings", opt.timings, "Print wall-clock timings to stderr");
}

void add_verify_opts(CLI::App* cmd, Options& opt) {
  cmd->add_option("--k-max", opt.k_max, "Maximum unrolling bound");
  cmd->add_option("--nondet-cap", opt.nondet_cap,
                  "Maximum samples per nondet variable")
      ->check(CLI::PositiveNumber);
}

int emit(const CmdResult& result, const Options& opt) {
  if (opt.format == "machine")
    std::cout << result.report.to_json() << "\n";
  else
    std::cout << result.report.to_text();
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ivbmc: interval-contractor search-space pruning for a bounded checker"};
  app.require_subcommand(1);

  Options opt;
  std::string input;

  CLI::App* contract = app.add_subcommand(
      "contract", "Print the CSP and the region partition for a program");
  contract->add_option("file", input, "mini-C source file")->required();
  add_common(contract, opt);

  CLI::App* instrument = app.add_subcommand(
      "instrument", "Insert assume directives derived from the contractors");
  instrument->add_option("file", input, "mini-C source file")->required();
  instrument->add_option("--out", opt.out_path, "Output path");
  add_common(instrument, opt);

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the incremental bounded checker on a program");
  verify->add_option("file", input, "mini-C source file")->required();
  add_verify_opts(verify, opt);
  add_common(verify, opt);

  CLI::App* bench = app.add_subcommand(
      "bench", "Run a corpus with expected-verdict sidecars");
  bench->add_option("dir", input, "corpus directory")->required();
  add_verify_opts(bench, opt);
  add_common(bench, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (contract->parsed()) return emit(cmd_contract(input, opt), opt);
    if (instrument->parsed()) return emit(cmd_instrument(input, opt), opt);
    if (verify->parsed()) return emit(cmd_verify(input, opt), opt);
    if (bench->parsed()) return emit(cmd_bench(input, opt), opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
