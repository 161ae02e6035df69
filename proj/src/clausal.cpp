#include "partsat/clausal.hpp"

#include <algorithm>
#include <string>

namespace partsat {

std::vector<Var> Clause::vars() const {
  std::vector<Var> out;
  out.reserve(literals.size());
  for (const auto& lit : literals) out.push_back(lit.var);
  return out;
}

Canonical canonicalize(std::span<const int> raw, std::size_t num_vars) {
  std::vector<Literal> lits;
  lits.reserve(raw.size());
  for (int x : raw) {
    if (x == 0) throw InstanceError("literal with variable id 0");
    const Literal lit = Literal::from_int(x);
    if (lit.var > num_vars) {
      throw InstanceError("variable " + std::to_string(lit.var) + " exceeds num_vars " +
                          std::to_string(num_vars));
    }
    lits.push_back(lit);
  }
  if (lits.empty()) return {Canonical::Kind::Empty, {}};
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i) {
    if (lits[i].var == lits[i - 1].var) return {Canonical::Kind::Tautology, {}};
  }
  return {Canonical::Kind::Clause, Clause{std::move(lits)}};
}

Instance Instance::from_raw(std::size_t num_vars, const std::vector<std::vector<int>>& raw) {
  Instance out;
  out.num_vars = num_vars;
  for (const auto& c : raw) {
    auto canon = canonicalize(c, num_vars);
    switch (canon.kind) {
      case Canonical::Kind::Clause:
        if (canon.clause.literals.size() > 3) {
          throw InstanceError("clause over " + std::to_string(canon.clause.literals.size()) +
                              " variables; only 3SAT is supported");
        }
        out.clauses.push_back(std::move(canon.clause));
        break;
      case Canonical::Kind::Tautology:
        ++out.tautologies_dropped;
        break;
      case Canonical::Kind::Empty:
        out.has_empty_clause = true;
        break;
    }
  }
  return out;
}

std::vector<Var> Instance::constrained_vars() const {
  std::vector<Var> out;
  for (const auto& c : clauses) {
    for (const auto& lit : c.literals) out.push_back(lit.var);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Var> Instance::unconstrained_vars() const {
  const auto used = constrained_vars();
  std::vector<Var> out;
  for (Var v = 1; v <= num_vars; ++v) {
    if (!std::binary_search(used.begin(), used.end(), v)) out.push_back(v);
  }
  return out;
}

void Assignment::set(Var v, bool value) {
  if (v == 0) throw InstanceError("assignment to variable id 0");
  if (v > values_.size()) values_.resize(v, 0);
  values_[v - 1] = value ? 1 : 0;
}

bool satisfies(const Clause& clause, const Assignment& a) {
  return std::any_of(clause.literals.begin(), clause.literals.end(),
                     [&](const Literal& l) { return a.value(l.var) != l.negated; });
}

bool satisfies(const Instance& instance, const Assignment& a) {
  if (instance.has_empty_clause) return false;
  return std::all_of(instance.clauses.begin(), instance.clauses.end(),
                     [&](const Clause& c) { return satisfies(c, a); });
}

std::vector<Var> triple_coords(const Triple& t) { return {t[0], t[1], t[2]}; }

std::vector<std::uint32_t> forbidden_cells(const Clause& clause, const Triple& triple) {
  // Each literal pins its coordinate to the value that makes it false; the
  // remaining coordinates are free.
  std::uint32_t fixed_mask = 0;
  std::uint32_t fixed_value = 0;
  for (const auto& lit : clause.literals) {
    const auto it = std::find(triple.begin(), triple.end(), lit.var);
    if (it == triple.end()) {
      throw InstanceError("clause variable " + std::to_string(lit.var) +
                          " is outside its host triple");
    }
    const auto bit = static_cast<std::uint32_t>(it - triple.begin());
    fixed_mask |= 1u << bit;
    if (lit.negated) fixed_value |= 1u << bit;
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t cell = 0; cell < 8; ++cell) {
    if ((cell & fixed_mask) == fixed_value) out.push_back(cell);
  }
  return out;
}

std::uint32_t assignment_restriction(const Assignment& a, const Triple& triple) {
  std::uint32_t cell = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (a.value(triple[i])) cell |= 1u << i;
  }
  return cell;
}

Var ClausalState::max_var() const {
  Var m = 0;
  for (const auto& [t, _] : cubes) m = std::max(m, t[2]);
  return m;
}

std::size_t ClausalState::green_count() const {
  std::size_t n = 0;
  for (const auto& [_, cube] : cubes) n += cube.green_count();
  return n;
}

std::vector<Var> padding_pool(const Instance& instance) {
  auto pool = instance.constrained_vars();
  if (pool.empty() || pool.size() >= 3) return pool;
  for (Var v : instance.unconstrained_vars()) {
    if (pool.size() >= 3) break;
    pool.push_back(v);
  }
  for (Var v = static_cast<Var>(instance.num_vars) + 1; pool.size() < 3; ++v) pool.push_back(v);
  std::sort(pool.begin(), pool.end());
  return pool;
}

Triple host_triple(const Clause& clause, std::span<const Var> pool) {
  auto vars = clause.vars();
  for (Var v : pool) {
    if (vars.size() >= 3) break;
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  if (vars.size() != 3) throw InstanceError("padding pool too small to host clause");
  std::sort(vars.begin(), vars.end());
  return {vars[0], vars[1], vars[2]};
}

ClausalState build_clausal_partition(const Instance& instance) {
  ClausalState state;
  if (instance.has_empty_clause) {
    state.trivially_unsat = true;
    return state;
  }
  const auto pool = padding_pool(instance);
  const auto constrained = instance.constrained_vars();
  for (Var v : pool) {
    if (!std::binary_search(constrained.begin(), constrained.end(), v)) {
      state.padding_vars.push_back(v);
    }
  }
  for (const auto& clause : instance.clauses) {
    const Triple host = host_triple(clause, pool);
    auto it = state.cubes.find(host);
    if (it == state.cubes.end()) {
      it = state.cubes.emplace(host, Partition::all_green(triple_coords(host))).first;
    }
    std::uint64_t allowed = 0xFF;
    for (auto cell : forbidden_cells(clause, host)) allowed &= ~(std::uint64_t{1} << cell);
    it->second = cellwise(Op::BS, it->second, Partition::from_mask(triple_coords(host), allowed));
  }
  return state;
}

}  // namespace partsat
