#include "partsat/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "partsat/dimacs.hpp"
#include "partsat/oracle.hpp"
#include "partsat/rng.hpp"

namespace partsat::verify {

namespace {

constexpr std::array<Color, 2> kColors{Color::Red, Color::Green};

const char* color_name(Color c) { return c == Color::Green ? "GREEN" : "RED"; }

// Records the first failure message and keeps counting.
class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  void expect(bool ok, const std::function<std::string()>& describe) {
    ++result_.cases;
    if (ok) return;
    ++result_.failures;
    if (result_.detail.empty()) result_.detail = describe();
  }

  CheckResult done(std::string summary = {}) {
    result_.passed = result_.failures == 0;
    if (result_.passed) {
      result_.detail = std::move(summary);
    } else {
      result_.detail = std::to_string(result_.failures) + " failure(s); first: " + result_.detail;
    }
    return std::move(result_);
  }

 private:
  CheckResult result_;
};

std::pair<std::vector<Var>, std::vector<Var>> layout(std::size_t overlap) {
  if (overlap == 2) return {{1, 2, 3}, {2, 3, 4}};
  return {{1, 2, 3}, {3, 4, 5}};
}

std::string hex_of(std::uint64_t mask) {
  return Partition::from_mask({1, 2, 3}, mask & 0xFF).hex_mask();
}

std::string pair_label(std::uint64_t pm, std::uint64_t qm) {
  return "p=" + hex_of(pm) + " q=" + hex_of(qm);
}

}  // namespace

std::optional<BcFn> mutated_bc(std::string_view name) {
  if (name == "bc-identity") {
    return BcFn([](const Partition& p, const Partition& q) { return std::pair{p, q}; });
  }
  if (name == "bc-ws-meet") {
    return BcFn([](const Partition& p, const Partition& q) {
      const auto shared = shared_coords(p.coords(), q.coords());
      const Partition meet = cellwise(Op::WS, project(p, shared), project(q, shared));
      return std::pair{impose(p, meet), impose(q, meet)};
    });
  }
  return std::nullopt;
}

std::vector<Instance> sample_instances(const SampleSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<Instance> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const std::size_t n = spec.n_lo + uniform_below(rng, spec.n_hi - spec.n_lo + 1);
    const double step = static_cast<double>(uniform_below(rng, 11)) / 10.0;
    const double ratio = spec.ratio_lo + (spec.ratio_hi - spec.ratio_lo) * step;
    const auto m = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
    const std::uint64_t seed = rng();
    if (!spec.mixed_width) {
      out.push_back(gen_random_3sat(n, m, seed));
      continue;
    }
    std::mt19937_64 local(seed);
    std::vector<std::vector<int>> raw;
    for (std::size_t c = 0; c < m; ++c) {
      const std::size_t width = 1 + uniform_below(local, 3);
      std::vector<int> clause;
      for (std::size_t j = 0; j < width; ++j) {
        const int v = static_cast<int>(uniform_below(local, n)) + 1;
        clause.push_back(uniform_below(local, 2) ? -v : v);
      }
      raw.push_back(std::move(clause));
    }
    out.push_back(Instance::from_raw(n, raw));
  }
  return out;
}

bool within_termination_bound(const PropagationResult& r, std::size_t cubes) {
  return r.stats.changing_applications <= 8 * cubes;
}

CheckResult check_algebra_axioms() {
  Tally t("algebra_axioms");
  for (Color a : kColors) {
    // Identities and absorption.
    t.expect(ws(a, Color::Red) == a && ws(Color::Red, a) == a,
             [&] { return std::string("RED is not a WS identity at ") + color_name(a); });
    t.expect(bs(a, Color::Green) == a && bs(Color::Green, a) == a,
             [&] { return std::string("GREEN is not a BS identity at ") + color_name(a); });
    t.expect(bs(a, Color::Red) == Color::Red,
             [&] { return std::string("RED does not absorb under BS at ") + color_name(a); });
    t.expect(ws(a, a) == a && bs(a, a) == a,
             [&] { return std::string("idempotence fails at ") + color_name(a); });
    for (Color b : kColors) {
      t.expect(ws(a, b) == ws(b, a), [&] { return std::string("WS not commutative"); });
      t.expect(bs(a, b) == bs(b, a), [&] { return std::string("BS not commutative"); });
      // Closure: results are one of the two colors.
      t.expect(ws(a, b) == Color::Red || ws(a, b) == Color::Green, [] { return std::string("WS not closed"); });
      t.expect(bs(a, b) == Color::Red || bs(a, b) == Color::Green, [] { return std::string("BS not closed"); });
      // Absorption laws of a lattice.
      t.expect(ws(a, bs(a, b)) == a && bs(a, ws(a, b)) == a,
               [] { return std::string("lattice absorption fails"); });
      for (Color c : kColors) {
        t.expect(ws(ws(a, b), c) == ws(a, ws(b, c)), [] { return std::string("WS not associative"); });
        t.expect(bs(bs(a, b), c) == bs(a, bs(b, c)), [] { return std::string("BS not associative"); });
        t.expect(bs(a, ws(b, c)) == ws(bs(a, b), bs(a, c)),
                 [] { return std::string("BS does not distribute over WS"); });
        t.expect(ws(a, bs(b, c)) == bs(ws(a, b), ws(a, c)),
                 [] { return std::string("WS does not distribute over BS"); });
        t.expect(bs(ws(b, c), a) == ws(bs(b, a), bs(c, a)),
                 [] { return std::string("BS does not right-distribute over WS"); });
        t.expect(ws(bs(b, c), a) == bs(ws(b, a), ws(c, a)),
                 [] { return std::string("WS does not right-distribute over BS"); });
      }
    }
  }
  return t.done("exhaustive over {RED,GREEN}");
}

CheckResult check_bc_against_oracle(std::size_t overlap, std::size_t stride, const BcFn& bc_fn) {
  Tally t("bc_vs_join_oracle_overlap" + std::to_string(overlap));
  const auto [pc, qc] = layout(overlap);
  for (std::uint64_t idx = 0; idx < 65536; idx += stride) {
    const std::uint64_t pm = idx >> 8, qm = idx & 0xFF;
    const Partition p = Partition::from_mask(pc, pm);
    const Partition q = Partition::from_mask(qc, qm);
    const auto got = bc_fn(p, q);
    const auto want = oracle::join_semantics_oracle(p, q);
    t.expect(got == want, [&] {
      return pair_label(pm, qm) + ": bc gave " + got.first.hex_mask() + "/" + got.second.hex_mask() +
             ", oracle " + want.first.hex_mask() + "/" + want.second.hex_mask();
    });
  }
  return t.done();
}

CheckResult check_bc_laws(std::size_t overlap, std::size_t stride, const BcFn& bc_fn) {
  Tally t("bc_contraction_idempotence_overlap" + std::to_string(overlap));
  const auto [pc, qc] = layout(overlap);
  for (std::uint64_t idx = 0; idx < 65536; idx += stride) {
    const std::uint64_t pm = idx >> 8, qm = idx & 0xFF;
    const Partition p = Partition::from_mask(pc, pm);
    const Partition q = Partition::from_mask(qc, qm);
    const auto once = bc_fn(p, q);
    t.expect(once.first.green_subset_of(p) && once.second.green_subset_of(q),
             [&] { return pair_label(pm, qm) + ": bc added GREEN cells"; });
    const auto twice = bc_fn(once.first, once.second);
    t.expect(twice == once, [&] { return pair_label(pm, qm) + ": bc not idempotent"; });
  }
  return t.done();
}

CheckResult check_bc_uni_matches_bc(std::size_t overlap, std::size_t stride, const BcFn& bc_fn) {
  Tally t("bc_uni_alternation_equals_bc_overlap" + std::to_string(overlap));
  const auto [pc, qc] = layout(overlap);
  for (std::uint64_t idx = 0; idx < 65536; idx += stride) {
    const std::uint64_t pm = idx >> 8, qm = idx & 0xFF;
    Partition p = Partition::from_mask(pc, pm);
    Partition q = Partition::from_mask(qc, qm);

    auto bi = bc_fn(p, q);
    for (auto next = bc_fn(bi.first, bi.second); next != bi; next = bc_fn(bi.first, bi.second)) {
      bi = std::move(next);
    }

    for (bool changed = true; changed;) {
      Partition np = bc_uni(p, q);
      Partition nq = bc_uni(q, np);
      changed = np != p || nq != q;
      p = std::move(np);
      q = std::move(nq);
    }
    t.expect(p == bi.first && q == bi.second, [&] {
      return pair_label(pm, qm) + ": one-way closure " + p.hex_mask() + "/" + q.hex_mask() +
             " vs bc " + bi.first.hex_mask() + "/" + bi.second.hex_mask();
    });
  }
  return t.done();
}

CheckResult check_partition_laws(std::uint64_t seed, std::size_t samples) {
  Tally t("project_lift_impose_laws");
  std::mt19937_64 rng(seed);

  auto random_coords = [&](std::size_t lo, std::size_t hi) {
    std::vector<Var> all{1, 2, 3, 4, 5, 6, 7};
    const std::size_t k = lo + uniform_below(rng, hi - lo + 1);
    for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[uniform_below(rng, i)]);
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
  };
  auto random_partition = [&](std::vector<Var> coords) {
    std::vector<std::uint32_t> green;
    for (std::uint32_t c = 0; c < (1u << coords.size()); ++c) {
      if (uniform_below(rng, 2)) green.push_back(c);
    }
    return Partition::from_green_cells(std::move(coords), green);
  };
  auto random_subset = [&](const std::vector<Var>& coords) {
    std::vector<Var> sub;
    while (sub.empty()) {
      for (Var v : coords) {
        if (uniform_below(rng, 2)) sub.push_back(v);
      }
    }
    return sub;
  };

  for (std::size_t s = 0; s < samples; ++s) {
    const auto big = random_coords(2, 6);
    const auto small = random_subset(big);
    const Partition p = random_partition(big);
    const Partition sp = random_partition(small);

    t.expect(project(lift(sp, big), small) == sp,
             [&] { return "project(lift(p)) != p for " + sp.to_string(); });
    t.expect(p.green_subset_of(lift(project(p, small), big)),
             [&] { return "lift(project(p)) lost GREEN cells of " + p.to_string(); });
    t.expect(project(p, big) == p, [&] { return "projection onto own coords not identity"; });

    const Partition wider = cellwise(Op::WS, p, random_partition(big));
    t.expect(project(p, small).green_subset_of(project(wider, small)),
             [&] { return "project not monotone on " + p.to_string(); });

    const Partition imposed = impose(p, sp);
    t.expect(imposed.green_subset_of(p), [&] { return "impose added GREEN cells"; });
    t.expect(impose(p, Partition::all_green(small)) == p, [] { return std::string("impose(p, GREEN) != p"); });
    t.expect(impose(p, Partition::all_red(small)).all_red(), [] { return std::string("impose(p, RED) not RED"); });

    // Cross product over disjoint coordinates.
    std::vector<Var> rest;
    for (Var v = 1; v <= 7; ++v) {
      if (!std::binary_search(big.begin(), big.end(), v)) rest.push_back(v);
    }
    if (!rest.empty()) {
      std::vector<Var> other(rest.begin(), rest.begin() + std::min<std::size_t>(rest.size(), 2));
      const Partition q = random_partition(other);
      const Partition x = cross(Op::BS, p, q);
      t.expect(x.cell_count() == p.cell_count() * q.cell_count(),
               [] { return std::string("cross cell count is not the product"); });
      t.expect(x.green_count() == p.green_count() * q.green_count(),
               [] { return std::string("BS cross GREEN count is not the product"); });
      const std::array<Partition, 2> parts{p, q};
      t.expect(assemble(parts, Op::BS) == x, [] { return std::string("assemble of disjoint parts != cross"); });
    }
  }
  return t.done(std::to_string(samples) + " random samples");
}

CheckResult check_assemble_vs_truth_table(const std::vector<Instance>& instances) {
  Tally t("assemble_equals_truth_table");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& inst = instances[i];
    const ClausalState state = build_clausal_partition(inst);
    if (state.cubes.empty()) continue;
    std::vector<Partition> cubes;
    std::vector<Var> coords;
    for (const auto& [tr, cube] : state.cubes) {
      cubes.push_back(cube);
      coords.insert(coords.end(), tr.begin(), tr.end());
    }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    if (coords.size() > oracle::kMaxTableVars) continue;
    const Partition built = assemble(cubes, Op::BS);
    // Phantom padding ids are absent from the instance, so they stay free.
    const Partition table = oracle::conjunction_truth_table(inst, coords);
    t.expect(built == table, [&] { return "instance " + std::to_string(i) + " differs"; });
  }
  return t.done();
}

CheckResult check_soundness(const std::vector<Instance>& instances) {
  Tally t("soundness");
  std::size_t unsat_claims = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& inst = instances[i];
    const ClausalState state = build_clausal_partition(inst);
    if (state.trivially_unsat) continue;
    FixpointOptions full;
    full.full_closure = true;
    const PropagationResult closed = fixpoint(state, full);
    const PropagationResult early = fixpoint(state);
    t.expect(within_termination_bound(closed, state.cubes.size()) &&
                 within_termination_bound(early, state.cubes.size()),
             [&] { return "instance " + std::to_string(i) + " exceeded the termination bound"; });

    std::vector<Triple> triples;
    for (const auto& [tr, _] : state.cubes) triples.push_back(tr);
    const auto projected = oracle::projected_solution_sets(inst, triples);
    for (const auto& [tr, cells] : projected) {
      const std::uint64_t mask = closed.fixpoint.cubes.at(tr).mask();
      t.expect((cells & ~mask) == 0, [&] {
        return "instance " + std::to_string(i) + ": solution cells " + hex_of(cells) +
               " not GREEN in fixpoint mask " + hex_of(mask);
      });
    }
    if (early.has_empty_cube() || closed.has_empty_cube()) {
      ++unsat_claims;
      t.expect(early.has_empty_cube() && closed.has_empty_cube(),
               [&] { return "instance " + std::to_string(i) + ": early exit changed the verdict"; });
      t.expect(!oracle::brute_force_sat(inst).satisfiable,
               [&] { return "instance " + std::to_string(i) + ": empty cube on a satisfiable instance"; });
    }
  }
  return t.done(std::to_string(unsat_claims) + " empty-cube verdicts, all oracle-confirmed");
}

CheckResult check_confluence(const std::vector<Instance>& instances,
                             const std::vector<std::uint64_t>& order_seeds) {
  Tally t("confluence");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const ClausalState state = build_clausal_partition(instances[i]);
    if (state.trivially_unsat) continue;
    FixpointOptions opts;
    opts.full_closure = true;
    const PropagationResult base = fixpoint(state, opts);
    t.expect(within_termination_bound(base, state.cubes.size()),
             [&] { return "instance " + std::to_string(i) + " exceeded the termination bound"; });
    for (std::uint64_t s : order_seeds) {
      opts.order = OrderPolicy::random(s);
      const PropagationResult r = fixpoint(state, opts);
      t.expect(r.fixpoint == base.fixpoint, [&] {
        return "instance " + std::to_string(i) + ": order random:" + std::to_string(s) +
               " reached a different fixpoint";
      });
      t.expect(within_termination_bound(r, state.cubes.size()),
               [&] { return "instance " + std::to_string(i) + " exceeded the termination bound"; });
    }
  }
  return t.done();
}

CheckResult check_uni_bi(const std::vector<Instance>& instances) {
  Tally t("unidirectional_equals_bidirectional");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const ClausalState state = build_clausal_partition(instances[i]);
    if (state.trivially_unsat) continue;
    FixpointOptions opts;
    opts.full_closure = true;
    const PropagationResult uni = fixpoint(state, opts);
    const PropagationResult bi = bidirectional_fixpoint(state, true);
    t.expect(uni.fixpoint == bi.fixpoint,
             [&] { return "instance " + std::to_string(i) + ": fixpoints differ"; });
    t.expect(within_termination_bound(uni, state.cubes.size()),
             [&] { return "instance " + std::to_string(i) + " exceeded the termination bound"; });
  }
  return t.done();
}

CheckResult check_termination(const std::vector<Instance>& instances) {
  Tally t("termination_bound");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const ClausalState state = build_clausal_partition(instances[i]);
    if (state.trivially_unsat) continue;
    for (bool full : {false, true}) {
      for (auto order : {OrderPolicy::fifo(), OrderPolicy::random(i)}) {
        FixpointOptions opts;
        opts.order = order;
        opts.full_closure = full;
        const PropagationResult r = fixpoint(state, opts);
        t.expect(within_termination_bound(r, state.cubes.size()), [&] {
          return "instance " + std::to_string(i) + ": " + std::to_string(r.stats.changing_applications) +
                 " changes for " + std::to_string(state.cubes.size()) + " cubes";
        });
        t.expect(r.stats.cells_removed == state.green_count() - r.fixpoint.green_count(),
                 [&] { return "instance " + std::to_string(i) + ": removal count mismatch"; });
      }
    }
  }
  return t.done();
}

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
  const BcFn bc_fn = options.bc_fn ? options.bc_fn : BcFn(&partsat::bc);
  // --quick checks every 7th mask pair and a fifth of the instances.
  const std::size_t stride = options.quick ? 7 : 1;
  const std::size_t scale = options.quick ? 5 : 1;
  const std::uint64_t seed = options.seed;

  std::vector<CheckResult> out;
  out.push_back(check_algebra_axioms());
  for (std::size_t overlap : {2, 1}) {
    out.push_back(check_bc_against_oracle(overlap, stride, bc_fn));
    out.push_back(check_bc_laws(overlap, stride, bc_fn));
    out.push_back(check_bc_uni_matches_bc(overlap, stride, bc_fn));
  }
  out.push_back(check_partition_laws(seed, 2000 / scale));

  const auto small = sample_instances({100 / scale, 3, 16, 0.5, 5.0, seed + 1, false});
  const auto mixed = sample_instances({100 / scale, 3, 14, 0.5, 4.0, seed + 2, true});
  auto both = small;
  both.insert(both.end(), mixed.begin(), mixed.end());
  out.push_back(check_assemble_vs_truth_table(both));

  auto sound = sample_instances({200 / scale, 12, 20, 1.0, 6.0, seed + 3, false});
  sound.insert(sound.end(), mixed.begin(), mixed.end());
  out.push_back(check_soundness(sound));
  out.push_back(check_confluence(sample_instances({50 / scale, 8, 20, 1.0, 6.0, seed + 4, false}),
                                 {seed + 11, seed + 12, seed + 13, seed + 14}));
  out.push_back(check_uni_bi(both));
  out.push_back(check_termination(both));
  return out;
}

}  // namespace partsat::verify
