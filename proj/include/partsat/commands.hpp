#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "partsat/propagate.hpp"
#include "partsat/report.hpp"

namespace partsat::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // verify found a failing law
  kExitUsage = 2,
  kExitUnsat = 10,
  kExitDisagree = 20,
};

/// `n=<n>,m=<m>,seed=<s>[,count=<k>]`; bench also accepts `m=<lo>..<hi>` and
/// `step=<d>`.
struct GenSpec {
  std::size_t n = 0;
  std::size_t m_lo = 0;
  std::size_t m_hi = 0;
  std::size_t m_step = 1;
  std::uint64_t seed = 0;
  std::size_t count = 1;

  std::string to_string() const;
};

/// Returns nullopt and fills `error` on malformed text.
std::optional<GenSpec> parse_gen_spec(std::string_view text, std::string& error);
/// `fifo` or `random:<seed>`.
std::optional<OrderPolicy> parse_order(std::string_view text);
std::string order_name(const OrderPolicy& order);

enum class OracleMode { On, Off, Auto };

struct RunConfig {
  std::optional<std::string> input;  // path or "-"
  std::optional<GenSpec> gen;
  OracleMode oracle = OracleMode::Auto;
  OrderPolicy order;
  std::optional<std::string> out;
  std::optional<std::string> trace;
  std::optional<std::string> cex_dir;
  bool quick = false;
  bool timing = false;
  std::string mutate;
  int verbosity = 0;
};

struct SolveOptions {
  OracleMode oracle = OracleMode::Auto;
  OrderPolicy order;
  bool extract = true;
  std::vector<TraceRecord>* trace = nullptr;
};

/// Runs the engine (and the oracle, when enabled and within its guard) on an
/// instance.
SolveBundle solve_instance(const Instance& instance, const SolveOptions& options);

/// 0 when the engine finds no empty cube and any oracle agrees, 10 for an
/// engine UNSAT that the oracle confirms or did not check, 20 on disagreement.
int exit_code_for(const SolveBundle& bundle);

/// Per-instance seed for bench instance `index` at clause count `m`.
std::uint64_t bench_instance_seed(std::uint64_t base, std::size_t m, std::size_t index);

struct BenchOptions {
  GenSpec gen;
  OracleMode oracle = OracleMode::Auto;
  OrderPolicy order;
  bool timing = false;
};

nlohmann::ordered_json run_bench(const BenchOptions& options);

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_trace(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace partsat::cli
