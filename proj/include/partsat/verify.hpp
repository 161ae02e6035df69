#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "partsat/bitspace.hpp"
#include "partsat/clausal.hpp"
#include "partsat/propagate.hpp"

// Property battery shared by `partsat verify` and the acceptance suite.
namespace partsat::verify {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string detail;  // first failure, or a summary
};

using BcFn = std::function<std::pair<Partition, Partition>(const Partition&, const Partition&)>;

/// Deliberately broken bc variants for testing the battery itself.
/// Known names: "bc-identity", "bc-ws-meet". Unknown names give nullopt.
std::optional<BcFn> mutated_bc(std::string_view name);

struct SampleSpec {
  std::size_t count = 0;
  std::size_t n_lo = 3;
  std::size_t n_hi = 3;
  double ratio_lo = 1.0;
  double ratio_hi = 1.0;
  std::uint64_t seed = 0;
  /// Clause widths drawn from 1..3 instead of fixed 3.
  bool mixed_width = false;
};

/// Deterministic batch of random instances. Per instance: n uniform in
/// [n_lo, n_hi], ratio on an 11-step grid over [ratio_lo, ratio_hi],
/// m = round(ratio * n).
std::vector<Instance> sample_instances(const SampleSpec& spec);

/// Change-making applications <= 8 * cubes.
bool within_termination_bound(const PropagationResult& r, std::size_t cubes);

CheckResult check_algebra_axioms();
/// All 256x256 mask pairs (every stride-th) on a fixed layout with the given
/// overlap (1 or 2), compared against the join-semantics oracle.
CheckResult check_bc_against_oracle(std::size_t overlap, std::size_t stride, const BcFn& bc_fn);
/// Contraction and idempotence of bc on the same pair grid.
CheckResult check_bc_laws(std::size_t overlap, std::size_t stride, const BcFn& bc_fn);
/// Alternating bc_uni to a fixpoint equals bc.
CheckResult check_bc_uni_matches_bc(std::size_t overlap, std::size_t stride, const BcFn& bc_fn);
CheckResult check_partition_laws(std::uint64_t seed, std::size_t samples);
CheckResult check_assemble_vs_truth_table(const std::vector<Instance>& instances);
CheckResult check_soundness(const std::vector<Instance>& instances);
CheckResult check_confluence(const std::vector<Instance>& instances,
                             const std::vector<std::uint64_t>& order_seeds);
CheckResult check_uni_bi(const std::vector<Instance>& instances);
CheckResult check_termination(const std::vector<Instance>& instances);

struct VerifyOptions {
  bool quick = false;
  BcFn bc_fn;  // defaults to partsat::bc when empty
  std::uint64_t seed = 20240501;
};

std::vector<CheckResult> run_verify(const VerifyOptions& options);

}  // namespace partsat::verify
