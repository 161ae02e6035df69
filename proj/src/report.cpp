#include "partsat/report.hpp"

namespace partsat {

using nlohmann::ordered_json;

bool SolveBundle::engine_unsat() const {
  return instance.has_empty_clause || (engine && engine->has_empty_cube());
}

std::optional<bool> SolveBundle::oracle_agrees() const {
  if (!oracle) return std::nullopt;
  return engine_unsat() != oracle->satisfiable;
}

std::string engine_verdict_name(const SolveBundle& bundle) {
  if (bundle.instance.has_empty_clause) return "unsat_by_empty_clause";
  return bundle.engine_unsat() ? "unsat_by_empty_cube" : "no_empty_cube";
}

std::string hex_byte(std::uint64_t mask) {
  return Partition::from_mask({1, 2, 3}, mask & 0xFF).hex_mask();
}

namespace {

ordered_json triple_json(const Triple& t) { return ordered_json::array({t[0], t[1], t[2]}); }

ordered_json assignment_json(const Assignment& a, std::size_t num_vars) {
  ordered_json out = ordered_json::array();
  for (Var v = 1; v <= num_vars; ++v) {
    out.push_back(a.value(v) ? static_cast<int>(v) : -static_cast<int>(v));
  }
  return out;
}

ordered_json header_json() {
  ordered_json out;
  out["tool"] = kToolName;
  out["version"] = kToolVersion;
  return out;
}

ordered_json instance_json(const SolveBundle& b) {
  ordered_json out;
  out["source"] = b.source;
  out["num_vars"] = b.instance.num_vars;
  out["num_clauses"] = b.instance.clauses.size();
  out["tautologies_dropped"] = b.instance.tautologies_dropped;
  out["empty_clause"] = b.instance.has_empty_clause;
  out["unconstrained_vars"] = b.instance.unconstrained_vars();
  out["padding_vars"] = b.initial.padding_vars;
  return out;
}

ordered_json seeds_json(const SolveBundle& b) {
  ordered_json out;
  out["generator"] = b.generator_seed ? ordered_json(*b.generator_seed) : ordered_json(nullptr);
  out["order"] = b.order_seed ? ordered_json(*b.order_seed) : ordered_json(nullptr);
  return out;
}

}  // namespace

ordered_json cubes_json(const ClausalState& state) {
  ordered_json out = ordered_json::array();
  for (const auto& [t, cube] : state.cubes) {
    ordered_json c;
    c["triple"] = triple_json(t);
    c["mask"] = cube.hex_mask();
    out.push_back(std::move(c));
  }
  return out;
}

ordered_json stats_json(const PropagationStats& stats) {
  ordered_json out;
  out["passes"] = stats.passes;
  out["applications"] = stats.applications;
  out["changing_applications"] = stats.changing_applications;
  out["cells_removed"] = stats.cells_removed;
  return out;
}

ordered_json report_json(const SolveBundle& b) {
  ordered_json out = header_json();
  out["instance"] = instance_json(b);
  out["seeds"] = seeds_json(b);
  out["order"] = b.order;
  out["engine_verdict"] = engine_verdict_name(b);
  if (b.engine && b.engine->has_empty_cube()) {
    out["empty_cube"] = triple_json(std::get<EmptyCube>(b.engine->verdict).triple);
  } else {
    out["empty_cube"] = nullptr;
  }
  out["oracle_status"] = b.oracle_status;
  if (b.oracle) {
    out["oracle_verdict"] = b.oracle->satisfiable ? "sat" : "unsat";
    out["oracle_solution_count"] = b.oracle->solution_count
                                       ? ordered_json(*b.oracle->solution_count)
                                       : ordered_json(nullptr);
  } else {
    out["oracle_verdict"] = nullptr;
    out["oracle_solution_count"] = nullptr;
  }
  const auto agrees = b.oracle_agrees();
  out["oracle_agrees"] = agrees ? ordered_json(*agrees) : ordered_json(nullptr);

  ordered_json stats = b.engine ? stats_json(b.engine->stats) : stats_json({});
  stats["cubes"] = b.initial.cubes.size();
  stats["initial_green_cells"] = b.initial.green_count();
  out["stats"] = std::move(stats);
  out["cubes"] = cubes_json(b.engine ? b.engine->fixpoint : b.initial);

  if (!b.extraction_attempted) {
    out["assignment"] = nullptr;
  } else {
    ordered_json a;
    a["found"] = b.extraction.has_value();
    a["verified"] = b.extraction ? b.extraction->verified : false;
    a["values"] = b.extraction ? assignment_json(b.extraction->assignment, b.instance.num_vars)
                               : ordered_json(nullptr);
    out["assignment"] = std::move(a);
  }
  return out;
}

std::string write_report(const SolveBundle& bundle) { return report_json(bundle).dump(2) + "\n"; }

ordered_json trace_json(const SolveBundle& b, const std::vector<TraceRecord>& trace) {
  ordered_json out = header_json();
  out["source"] = b.source;
  out["order"] = b.order;
  out["initial"] = cubes_json(b.initial);
  ordered_json apps = ordered_json::array();
  for (const auto& r : trace) {
    ordered_json rec;
    rec["source"] = triple_json(r.source);
    rec["target"] = triple_json(r.target);
    rec["before"] = hex_byte(r.before);
    rec["after"] = hex_byte(r.after);
    rec["removed"] = r.removed;
    apps.push_back(std::move(rec));
  }
  out["applications"] = std::move(apps);
  out["engine_verdict"] = engine_verdict_name(b);
  out["final"] = cubes_json(b.engine ? b.engine->fixpoint : b.initial);
  out["stats"] = b.engine ? stats_json(b.engine->stats) : stats_json({});
  return out;
}

}  // namespace partsat
