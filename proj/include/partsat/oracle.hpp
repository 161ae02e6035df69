#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "partsat/bitspace.hpp"
#include "partsat/clausal.hpp"

// Brute-force ground truth. Nothing here calls the bitspace combination
// operators; partitions are only constructed and read.
namespace partsat::oracle {

inline constexpr std::size_t kMaxDecideVars = 30;
inline constexpr std::size_t kMaxCountVars = 20;
inline constexpr std::size_t kMaxTableVars = 16;

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleVerdict {
  bool satisfiable = false;
  std::optional<Assignment> witness;
  /// Exact number of satisfying assignments over 1..num_vars; present when
  /// num_vars <= kMaxCountVars.
  std::optional<std::uint64_t> solution_count;
};

/// Exhaustive search with clause-falsification pruning.
OracleVerdict brute_force_sat(const Instance& instance);

/// Reference semantics for bc: a GREEN cell survives iff some GREEN cell of
/// the other partition agrees with it on every shared variable.
std::pair<Partition, Partition> join_semantics_oracle(const Partition& p, const Partition& q);

/// For each triple, the bitmask of cells {sigma|t : sigma satisfies instance}.
/// Variables above num_vars (phantom padding) are unconstrained.
std::map<Triple, std::uint8_t> projected_solution_sets(const Instance& instance,
                                                       std::span<const Triple> triples);

/// Full-space partition whose GREEN cells are the satisfying assignments, over
/// the given ascending coordinates (which must cover every constrained
/// variable).
Partition conjunction_truth_table(const Instance& instance, std::vector<Var> coords);

/// As above over the constrained variables, or 1..num_vars when no clause
/// mentions any variable.
Partition conjunction_truth_table(const Instance& instance);

}  // namespace partsat::oracle
