// partsat: clausal-partition propagation over 3SAT instances.
//
//   partsat solve  --input f.cnf | --gen n=..,m=..,seed=..  [--oracle on|off|auto]
//   partsat trace  --input f.cnf [--trace out.json]
//   partsat verify [--quick]
//   partsat bench  --gen n=12,m=12..72,step=6,seed=1,count=50 [--out report.json]

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "partsat/commands.hpp"

namespace {

using partsat::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& cfg, std::string& gen, std::string& order,
                std::string& oracle) {
  sub->add_option("--input", cfg.input, "DIMACS CNF path, or - for standard input");
  sub->add_option("--gen", gen, "generator spec n=<n>,m=<m>,seed=<s>[,count=<k>]");
  sub->add_option("--order", order, "edge scheduling: fifo | random:<seed>")->default_val("fifo");
  sub->add_option("--oracle", oracle, "brute-force cross-check: on | off | auto")
      ->check(CLI::IsMember({"on", "off", "auto"}))
      ->default_val("auto");
  sub->add_option("--out", cfg.out, "report path (default: standard output)");
  sub->add_option("--trace", cfg.trace, "trace output path");
  sub->add_flag("-v,--verbose", cfg.verbosity, "more output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clausal-partition propagation for 3SAT with a brute-force audit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", partsat::kToolVersion);

  RunConfig cfg;
  std::string gen, order = "fifo", oracle = "auto";

  auto* solve = app.add_subcommand("solve", "propagate to a fixpoint and write a JSON report");
  auto* trace = app.add_subcommand("trace", "propagate and record every edge application");
  auto* bench = app.add_subcommand("bench", "sweep random instances and tabulate engine/oracle agreement");
  auto* verify = app.add_subcommand("verify", "run the property battery");

  for (auto* sub : {solve, trace, bench}) add_common(sub, cfg, gen, order, oracle);
  bench->add_option("--cex-dir", cfg.cex_dir, "directory for counterexample .cnf files");
  bench->add_flag("--timing", cfg.timing, "include wall-clock times (breaks byte-identical output)");
  verify->add_flag("--quick", cfg.quick, "subsample the exhaustive pair checks");
  verify->add_option("--mutate", cfg.mutate, "run against a deliberately broken bc")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : partsat::cli::kExitUsage;
  }

  if (!gen.empty()) {
    std::string error;
    cfg.gen = partsat::cli::parse_gen_spec(gen, error);
    if (!cfg.gen) {
      std::cerr << "error: " << error << '\n';
      return partsat::cli::kExitUsage;
    }
  }
  auto policy = partsat::cli::parse_order(order);
  if (!policy) {
    std::cerr << "error: --order must be fifo or random:<seed>\n";
    return partsat::cli::kExitUsage;
  }
  cfg.order = *policy;
  cfg.oracle = oracle == "on"    ? partsat::cli::OracleMode::On
               : oracle == "off" ? partsat::cli::OracleMode::Off
                                 : partsat::cli::OracleMode::Auto;

  try {
    if (solve->parsed()) return partsat::cli::cmd_solve(cfg, std::cout, std::cerr);
    if (trace->parsed()) return partsat::cli::cmd_trace(cfg, std::cout, std::cerr);
    if (bench->parsed()) return partsat::cli::cmd_bench(cfg, std::cout, std::cerr);
    return partsat::cli::cmd_verify(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return partsat::cli::kExitUsage;
  }
}
