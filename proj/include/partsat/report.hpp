#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "partsat/clausal.hpp"
#include "partsat/oracle.hpp"
#include "partsat/propagate.hpp"

namespace partsat {

inline constexpr const char* kToolName = "partsat";
inline constexpr const char* kToolVersion = "0.1.0";

/// Everything a single solve run produced.
struct SolveBundle {
  std::string source;  // input path, "-" or "gen:n=..,m=..,seed=.."
  std::optional<std::uint64_t> generator_seed;
  std::string order = "fifo";
  std::optional<std::uint64_t> order_seed;

  Instance instance;
  ClausalState initial;
  std::optional<PropagationResult> engine;  // absent for an empty clause
  std::optional<Extraction> extraction;
  bool extraction_attempted = false;

  std::optional<oracle::OracleVerdict> oracle;
  std::string oracle_status = "skipped";  // "ran", "skipped", "guard_exceeded"

  /// Engine claims the instance is unsatisfiable.
  bool engine_unsat() const;
  /// Empty when the oracle did not run.
  std::optional<bool> oracle_agrees() const;
};

/// Verdict string: "no_empty_cube", "unsat_by_empty_cube" or
/// "unsat_by_empty_clause".
std::string engine_verdict_name(const SolveBundle& bundle);

nlohmann::ordered_json cubes_json(const ClausalState& state);
nlohmann::ordered_json stats_json(const PropagationStats& stats);

/// Run report; the field set is documented in docs/report-format.md.
nlohmann::ordered_json report_json(const SolveBundle& bundle);
std::string write_report(const SolveBundle& bundle);

nlohmann::ordered_json trace_json(const SolveBundle& bundle, const std::vector<TraceRecord>& trace);

std::string hex_byte(std::uint64_t mask);

}  // namespace partsat
