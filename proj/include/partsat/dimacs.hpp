#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "partsat/clausal.hpp"

namespace partsat {

struct ParseDiagnostic {
  enum class Severity { Error, Warning };
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
  std::string message;
  Severity severity = Severity::Error;

  std::string to_string() const;
};

struct ParseResult {
  /// Present iff no error diagnostics were produced.
  std::optional<Instance> instance;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return instance.has_value(); }
  std::size_t warning_count() const;
};

/*
 * DIMACS CNF restricted to clauses of at most three distinct variables.
 *
 * Accepts `c` comment lines, a single `p cnf <vars> <clauses>` problem line
 * and zero-terminated clauses that may span lines. A line holding only `%`
 * ends the clause section (SATLIB benchmark convention).
 */
ParseResult parse_dimacs(std::string_view text);

/// Canonical text: header, then one sorted clause per line.
std::string emit_dimacs(const Instance& instance);

/*
 * Uniform random 3SAT. A std::mt19937_64 seeded with `seed` drives
 * uniform_below(); for each clause three distinct variables are drawn by
 * rejection (each uniform_below(n) + 1, redrawing repeats), then one raw
 * generator output supplies the polarities in its low three bits (bit i
 * negates the i-th drawn variable). Literals are then sorted. Requires n >= 3.
 */
Instance gen_random_3sat(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace partsat
