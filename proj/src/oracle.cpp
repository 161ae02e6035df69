#include "partsat/oracle.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace partsat::oracle {

namespace {

// Depth-first enumeration over 1..n with clauses checked as soon as their
// highest variable is assigned. `visit` is called on every satisfying leaf
// and returns false to stop.
class Enumerator {
 public:
  explicit Enumerator(const Instance& instance)
      : n_(instance.num_vars), by_last_(instance.num_vars + 1), values_(instance.num_vars) {
    for (const auto& c : instance.clauses) by_last_[c.literals.back().var].push_back(&c);
  }

  void run(const std::function<bool(const Assignment&)>& visit) {
    visit_ = &visit;
    stop_ = false;
    descend(1);
  }

 private:
  bool clauses_ok(Var v) const {
    for (const Clause* c : by_last_[v]) {
      bool sat = false;
      for (const auto& lit : c->literals) {
        if (values_.value(lit.var) != lit.negated) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
    return true;
  }

  void descend(Var v) {
    if (stop_) return;
    if (v > n_) {
      if (!(*visit_)(values_)) stop_ = true;
      return;
    }
    for (bool value : {false, true}) {
      values_.set(v, value);
      if (clauses_ok(v)) descend(v + 1);
      if (stop_) return;
    }
    values_.set(v, false);
  }

  std::size_t n_;
  std::vector<std::vector<const Clause*>> by_last_;
  Assignment values_;
  const std::function<bool(const Assignment&)>* visit_ = nullptr;
  bool stop_ = false;
};

bool cell_value(const Partition& p, std::uint32_t cell, Var v) {
  const int pos = p.position_of(v);
  return (cell >> pos) & 1u;
}

Partition filter_by_support(const Partition& self, const Partition& other,
                            std::span<const Var> shared) {
  std::vector<std::uint32_t> keep;
  for (std::uint32_t a = 0; a < self.cell_count(); ++a) {
    if (!self.is_green(a)) continue;
    for (std::uint32_t b = 0; b < other.cell_count(); ++b) {
      if (!other.is_green(b)) continue;
      const bool agrees = std::all_of(shared.begin(), shared.end(), [&](Var v) {
        return cell_value(self, a, v) == cell_value(other, b, v);
      });
      if (agrees) {
        keep.push_back(a);
        break;
      }
    }
  }
  return Partition::from_green_cells(self.coords(), keep);
}

}  // namespace

OracleVerdict brute_force_sat(const Instance& instance) {
  if (instance.num_vars > kMaxDecideVars) {
    throw GuardExceeded("brute_force_sat: " + std::to_string(instance.num_vars) +
                        " variables exceed the limit of " + std::to_string(kMaxDecideVars));
  }
  OracleVerdict out;
  if (instance.has_empty_clause) {
    if (instance.num_vars <= kMaxCountVars) out.solution_count = 0;
    return out;
  }
  const bool counting = instance.num_vars <= kMaxCountVars;
  std::uint64_t count = 0;
  Enumerator(instance).run([&](const Assignment& a) {
    if (!out.witness) out.witness = a;
    ++count;
    return counting;
  });
  out.satisfiable = out.witness.has_value();
  if (counting) out.solution_count = count;
  return out;
}

std::pair<Partition, Partition> join_semantics_oracle(const Partition& p, const Partition& q) {
  std::vector<Var> shared;
  for (Var v : p.coords()) {
    if (q.position_of(v) >= 0) shared.push_back(v);
  }
  if (shared.empty()) throw PartitionError("join_semantics_oracle: operands share no coordinates");
  return {filter_by_support(p, q, shared), filter_by_support(q, p, shared)};
}

std::map<Triple, std::uint8_t> projected_solution_sets(const Instance& instance,
                                                       std::span<const Triple> triples) {
  if (instance.num_vars > kMaxCountVars) {
    throw GuardExceeded("projected_solution_sets: " + std::to_string(instance.num_vars) +
                        " variables exceed the limit of " + std::to_string(kMaxCountVars));
  }
  std::map<Triple, std::uint8_t> out;
  for (const auto& t : triples) out[t] = 0;
  if (instance.has_empty_clause) return out;

  // Phantom coordinates take both values for every solution.
  std::vector<std::vector<std::uint32_t>> free_bits;
  for (const auto& t : triples) {
    std::vector<std::uint32_t> bits;
    for (std::uint32_t i = 0; i < 3; ++i) {
      if (t[i] > instance.num_vars) bits.push_back(i);
    }
    free_bits.push_back(std::move(bits));
  }

  Enumerator(instance).run([&](const Assignment& a) {
    for (std::size_t i = 0; i < triples.size(); ++i) {
      std::uint32_t cell = 0;
      for (std::uint32_t b = 0; b < 3; ++b) {
        if (triples[i][b] <= instance.num_vars && a.value(triples[i][b])) cell |= 1u << b;
      }
      const auto& fb = free_bits[i];
      for (std::uint32_t combo = 0; combo < (1u << fb.size()); ++combo) {
        std::uint32_t c = cell;
        for (std::size_t j = 0; j < fb.size(); ++j) {
          if ((combo >> j) & 1u) c |= 1u << fb[j];
        }
        out[triples[i]] |= static_cast<std::uint8_t>(1u << c);
      }
    }
    return true;
  });
  return out;
}

Partition conjunction_truth_table(const Instance& instance, std::vector<Var> coords) {
  if (coords.size() > kMaxTableVars) {
    throw GuardExceeded("conjunction_truth_table: " + std::to_string(coords.size()) +
                        " coordinates exceed the limit of " + std::to_string(kMaxTableVars));
  }
  for (Var v : instance.constrained_vars()) {
    if (!std::binary_search(coords.begin(), coords.end(), v)) {
      throw PartitionError("conjunction_truth_table: coordinates miss constrained variable " +
                           std::to_string(v));
    }
  }
  const Partition shape = Partition::all_red(coords);
  std::vector<std::uint32_t> green;
  for (std::uint32_t cell = 0; cell < shape.cell_count(); ++cell) {
    Assignment a;
    for (std::size_t i = 0; i < coords.size(); ++i) a.set(coords[i], (cell >> i) & 1u);
    if (satisfies(instance, a)) green.push_back(cell);
  }
  return Partition::from_green_cells(std::move(coords), green);
}

Partition conjunction_truth_table(const Instance& instance) {
  auto coords = instance.constrained_vars();
  if (coords.empty()) {
    for (Var v = 1; v <= instance.num_vars; ++v) coords.push_back(v);
  }
  return conjunction_truth_table(instance, std::move(coords));
}

}  // namespace partsat::oracle
