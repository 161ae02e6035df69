#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "partsat/bitspace.hpp"

namespace partsat {

struct Literal {
  Var var = 0;
  bool negated = false;

  /// DIMACS-style signed integer.
  int to_int() const noexcept { return negated ? -static_cast<int>(var) : static_cast<int>(var); }
  static Literal from_int(int lit) noexcept {
    return {static_cast<Var>(lit < 0 ? -lit : lit), lit < 0};
  }

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// A disjunction of 1-3 literals, sorted by variable, duplicate-free and not
/// tautological.
struct Clause {
  std::vector<Literal> literals;

  std::vector<Var> vars() const;
  friend bool operator==(const Clause&, const Clause&) = default;
};

class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Result of canonicalizing a raw literal list.
struct Canonical {
  enum class Kind { Clause, Tautology, Empty };
  Kind kind = Kind::Empty;
  Clause clause;  // meaningful for Kind::Clause
};

/// Merges duplicates and sorts. Throws InstanceError for variable 0 or a
/// variable above num_vars.
Canonical canonicalize(std::span<const int> raw, std::size_t num_vars);

struct Instance {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;
  std::size_t tautologies_dropped = 0;
  bool has_empty_clause = false;

  /// Builds from signed-integer clauses, canonicalizing each.
  static Instance from_raw(std::size_t num_vars, const std::vector<std::vector<int>>& raw);

  /// Ascending ids of variables appearing in at least one clause.
  std::vector<Var> constrained_vars() const;
  /// Ascending ids in 1..num_vars appearing in no clause.
  std::vector<Var> unconstrained_vars() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Truth values indexed by variable id (1-based). Unset values read as F.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t num_vars) : values_(num_vars, 0) {}

  std::size_t size() const noexcept { return values_.size(); }
  bool value(Var v) const { return v >= 1 && v <= values_.size() && values_[v - 1]; }
  void set(Var v, bool value);

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> values_;
};

bool satisfies(const Clause& clause, const Assignment& a);
bool satisfies(const Instance& instance, const Assignment& a);

using Triple = std::array<Var, 3>;

std::vector<Var> triple_coords(const Triple& t);

/// Cells of the host triple's cube whose assignment falsifies the clause.
std::vector<std::uint32_t> forbidden_cells(const Clause& clause, const Triple& triple);

/// Index of the assignment's restriction to the triple.
std::uint32_t assignment_restriction(const Assignment& a, const Triple& triple);

/*
 * The clausal partition: one 8-cell cube per host triple.
 *
 * Clauses on three distinct variables are hosted on their own variable set.
 * Narrower clauses are padded with the smallest-id variables of the padding
 * pool that they do not mention. The pool is the set of constrained
 * variables; when fewer than three exist it is topped up with the smallest
 * unconstrained ids of the instance and then with phantom ids above num_vars.
 */
struct ClausalState {
  std::map<Triple, Partition> cubes;
  /// Set when the instance contains an empty clause; cubes is empty then.
  bool trivially_unsat = false;
  /// Unconstrained or phantom ids pulled in by padding.
  std::vector<Var> padding_vars;

  /// Highest variable id covered by any cube (0 when there are none).
  Var max_var() const;
  std::size_t green_count() const;

  friend bool operator==(const ClausalState&, const ClausalState&) = default;
};

/// Host triple chosen for a clause given the padding pool (ascending).
Triple host_triple(const Clause& clause, std::span<const Var> pool);

/// Padding pool for an instance as described on ClausalState.
std::vector<Var> padding_pool(const Instance& instance);

ClausalState build_clausal_partition(const Instance& instance);

}  // namespace partsat
