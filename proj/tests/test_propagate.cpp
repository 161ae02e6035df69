#include <vector>

#include "doctest.h"
#include "partsat/oracle.hpp"
#include "partsat/propagate.hpp"
#include "partsat/verify.hpp"

using namespace partsat;

namespace {

ClausalState state_of(std::initializer_list<std::pair<Triple, std::uint64_t>> cubes) {
  ClausalState s;
  for (const auto& [t, m] : cubes) s.cubes.emplace(t, Partition::from_mask(triple_coords(t), m));
  return s;
}

std::vector<std::vector<int>> all_polarities() {
  std::vector<std::vector<int>> out;
  for (int s = 0; s < 8; ++s) out.push_back({s & 1 ? -1 : 1, s & 2 ? -2 : 2, s & 4 ? -3 : 3});
  return out;
}

FixpointOptions closure(OrderPolicy order = OrderPolicy::fifo()) {
  FixpointOptions o;
  o.order = order;
  o.full_closure = true;
  return o;
}

}  // namespace

TEST_CASE("adjacency") {
  auto g = build_adjacency(state_of({{{1, 2, 3}, 0xFF}, {{2, 3, 4}, 0xFF}}));
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0] == Edge{0, 1, 2});
  CHECK(g.edges[1] == Edge{1, 0, 2});

  CHECK(build_adjacency(state_of({{{1, 2, 3}, 0xFF}, {{4, 5, 6}, 0xFF}})).edges.empty());

  auto three = build_adjacency(state_of({{{1, 2, 3}, 0xFF}, {{3, 4, 5}, 0xFF}, {{1, 4, 6}, 0xFF}}));
  CHECK(three.edges.size() == 6);
  for (const auto& e : three.edges) CHECK(e.overlap == 1);
}

TEST_CASE("apply_edge") {
  ClausalState s = state_of({{{1, 2, 3}, 0xFC}, {{2, 3, 4}, 0xFF}});
  auto g = build_adjacency(s);

  // Target (1,2,3) from an all-GREEN source: nothing to remove.
  auto quiet = apply_edge(s, g, g.edges[1]);
  CHECK_FALSE(quiet.changed);
  CHECK(quiet.state == s);

  auto moved = apply_edge(s, g, g.edges[0]);
  CHECK(moved.changed);
  CHECK(moved.state.cubes.at({2, 3, 4}).mask() == 0xEE);
  CHECK(moved.state.cubes.at({1, 2, 3}).mask() == 0xFC);

  auto again = apply_edge(moved.state, g, g.edges[0]);
  CHECK_FALSE(again.changed);
}

TEST_CASE("single cube is already a fixpoint") {
  const ClausalState s = build_clausal_partition(Instance::from_raw(3, {{-1, 2, -3}}));
  const auto r = fixpoint(s);
  CHECK(r.fixpoint == s);
  CHECK(r.stats.changing_applications == 0);
  CHECK(r.stats.applications == 0);
  CHECK(std::holds_alternative<NoEmptyCube>(r.verdict));
}

TEST_CASE("an all-RED cube empties its neighbours") {
  auto raw = all_polarities();
  raw.push_back({3, 4, 5});
  const Instance inst = Instance::from_raw(5, raw);
  const ClausalState s = build_clausal_partition(inst);

  const auto early = fixpoint(s);
  REQUIRE(early.has_empty_cube());
  CHECK(std::get<EmptyCube>(early.verdict).triple == Triple{1, 2, 3});
  CHECK(early.stats.applications == 0);

  const auto full = fixpoint(s, closure());
  CHECK(std::get<EmptyCube>(full.verdict).triple == Triple{1, 2, 3});
  CHECK(full.fixpoint.cubes.at({3, 4, 5}).all_red());
}

TEST_CASE("forced units cross cubes and match the projected solution sets") {
  // u1; u1 -> u4; u4 -> u6, spread over the acyclic triples (1,4,5) and (4,6,7).
  const Instance inst =
      Instance::from_raw(7, {{1}, {-1, 4, 5}, {-1, 4, -5}, {-4, 6, 7}, {-4, 6, -7}});
  const ClausalState s = build_clausal_partition(inst);
  REQUIRE(s.cubes.size() == 2);
  const auto r = fixpoint(s);
  CHECK_FALSE(r.has_empty_cube());

  std::vector<Triple> triples;
  for (const auto& [t, _] : s.cubes) triples.push_back(t);
  const auto want = oracle::projected_solution_sets(inst, triples);
  for (const auto& [t, cells] : want) CHECK(r.fixpoint.cubes.at(t).mask() == cells);
  // u4 = u6 = T leaves cells 3 and 7 of (4,6,7).
  CHECK(r.fixpoint.cubes.at({4, 6, 7}).mask() == 0x88);
}

TEST_CASE("masks only shrink and removals add up") {
  const auto instances = verify::sample_instances({30, 6, 14, 2.0, 5.0, 99, false});
  for (const auto& inst : instances) {
    const ClausalState s = build_clausal_partition(inst);
    std::vector<TraceRecord> trace;
    FixpointOptions opts = closure(OrderPolicy::random(3));
    opts.trace = &trace;
    const auto r = fixpoint(s, opts);
    std::size_t removed = 0;
    for (const auto& rec : trace) {
      CHECK((rec.after & rec.before) == rec.after);
      removed += rec.removed;
    }
    CHECK(removed == r.stats.cells_removed);
    CHECK(r.stats.cells_removed == s.green_count() - r.fixpoint.green_count());
    CHECK(r.stats.changing_applications <= 8 * s.cubes.size());
    for (const auto& [t, cube] : r.fixpoint.cubes) CHECK(cube.green_subset_of(s.cubes.at(t)));
  }
}

TEST_CASE("verdict matches cube emptiness") {
  const auto instances = verify::sample_instances({40, 8, 12, 4.0, 8.0, 5, false});
  for (const auto& inst : instances) {
    const ClausalState s = build_clausal_partition(inst);
    for (bool full : {false, true}) {
      FixpointOptions o;
      o.full_closure = full;
      const auto r = fixpoint(s, o);
      CHECK(r.has_empty_cube() == first_empty_cube(r.fixpoint).has_value());
      if (r.has_empty_cube()) {
        CHECK(r.fixpoint.cubes.at(std::get<EmptyCube>(r.verdict).triple).all_red());
      }
    }
  }
}

TEST_CASE("orders and the two-sided closure agree") {
  const auto instances = verify::sample_instances({25, 6, 14, 1.0, 6.0, 17, true});
  for (const auto& inst : instances) {
    const ClausalState s = build_clausal_partition(inst);
    if (s.trivially_unsat) continue;
    const auto base = fixpoint(s, closure());
    for (std::uint64_t seed : {1u, 2u, 3u}) CHECK(fixpoint(s, closure(OrderPolicy::random(seed))).fixpoint == base.fixpoint);
    CHECK(bidirectional_fixpoint(s, true).fixpoint == base.fixpoint);
    CHECK(bidirectional_fixpoint(s).has_empty_cube() == base.has_empty_cube());
  }
}

TEST_CASE("bidirectional closure on degenerate states") {
  const ClausalState lone = build_clausal_partition(Instance::from_raw(3, {{1, 2, 3}}));
  CHECK(bidirectional_fixpoint(lone).fixpoint == lone);
  CHECK_THROWS_AS(fixpoint(build_clausal_partition(Instance::from_raw(3, {{}}))), std::invalid_argument);
}

TEST_CASE("fixpoint keeps every solution") {
  const auto instances = verify::sample_instances({60, 6, 14, 1.0, 6.0, 23, true});
  for (const auto& inst : instances) {
    const ClausalState s = build_clausal_partition(inst);
    if (s.trivially_unsat) continue;
    const auto r = fixpoint(s, closure());
    std::vector<Triple> triples;
    for (const auto& [t, _] : s.cubes) triples.push_back(t);
    for (const auto& [t, cells] : oracle::projected_solution_sets(inst, triples)) {
      CHECK((cells & ~r.fixpoint.cubes.at(t).mask()) == 0);
    }
    if (r.has_empty_cube()) CHECK_FALSE(oracle::brute_force_sat(inst).satisfiable);
  }
}

TEST_CASE("extract_assignment") {
  const Instance one = Instance::from_raw(3, {{1, 2, 3}});
  auto r = fixpoint(build_clausal_partition(one));
  auto got = extract_assignment(r, one);
  REQUIRE(got);
  CHECK(got->verified);
  CHECK_FALSE(got->assignment.value(1));
  CHECK_FALSE(got->assignment.value(2));
  CHECK(got->assignment.value(3));

  const Instance unit = Instance::from_raw(4, {{-1}, {1, 2, 4}});
  auto u = extract_assignment(fixpoint(build_clausal_partition(unit)), unit);
  REQUIRE(u);
  CHECK(u->verified);
  CHECK_FALSE(u->assignment.value(1));
  CHECK_FALSE(u->assignment.value(3));  // unconstrained

  const Instance tiny = Instance::from_raw(2, {{-1, -2}, {1}});
  auto t = extract_assignment(fixpoint(build_clausal_partition(tiny)), tiny);
  REQUIRE(t);
  CHECK(t->assignment.size() == 2);
  CHECK(t->verified);

  const Instance bad = Instance::from_raw(3, all_polarities());
  CHECK_THROWS_AS(extract_assignment(fixpoint(build_clausal_partition(bad)), bad), std::logic_error);
}

TEST_CASE("extracted assignments are always checked") {
  // Whatever extraction returns must carry an honest verification flag.
  const auto instances = verify::sample_instances({40, 8, 14, 2.0, 5.0, 31, false});
  for (const auto& inst : instances) {
    const auto r = fixpoint(build_clausal_partition(inst));
    if (r.has_empty_cube()) continue;
    if (auto got = extract_assignment(r, inst)) CHECK(got->verified == satisfies(inst, got->assignment));
  }
}
