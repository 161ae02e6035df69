#include <algorithm>
#include <vector>

#include "doctest.h"
#include "partsat/bitspace.hpp"
#include "partsat/clausal.hpp"

using namespace partsat;

TEST_CASE("canonicalize") {
  const std::vector<int> dup{2, -1, 2};
  auto c = canonicalize(dup, 3);
  REQUIRE(c.kind == Canonical::Kind::Clause);
  CHECK(c.clause.literals == std::vector<Literal>{{1, true}, {2, false}});

  const std::vector<int> taut{1, -1, 3};
  CHECK(canonicalize(taut, 3).kind == Canonical::Kind::Tautology);
  CHECK(canonicalize(std::vector<int>{}, 3).kind == Canonical::Kind::Empty);

  CHECK_THROWS_AS(canonicalize(std::vector<int>{0, 1}, 3), InstanceError);
  CHECK_THROWS_AS(canonicalize(std::vector<int>{4}, 3), InstanceError);
}

TEST_CASE("instance bookkeeping") {
  const Instance inst = Instance::from_raw(6, {{1, -3, 4}, {2, -2}, {4, 1}});
  CHECK(inst.clauses.size() == 2);
  CHECK(inst.tautologies_dropped == 1);
  CHECK_FALSE(inst.has_empty_clause);
  CHECK(inst.constrained_vars() == std::vector<Var>{1, 3, 4});
  CHECK(inst.unconstrained_vars() == std::vector<Var>{2, 5, 6});
  CHECK(Instance::from_raw(3, {{}}).has_empty_clause);
  CHECK_THROWS_AS(Instance::from_raw(5, {{1, 2, 3, 4}}), InstanceError);
}

TEST_CASE("forbidden cells") {
  const Triple t{1, 2, 3};
  CHECK(forbidden_cells(Clause{{{1, true}, {2, false}, {3, true}}}, t) == std::vector<std::uint32_t>{5});
  CHECK(forbidden_cells(Clause{{{1, false}, {2, false}}}, t) == std::vector<std::uint32_t>{0, 4});
  CHECK(forbidden_cells(Clause{{{2, true}}}, t) == std::vector<std::uint32_t>{2, 3, 6, 7});
  CHECK_THROWS_AS(forbidden_cells(Clause{{{4, false}}}, t), InstanceError);
}

TEST_CASE("forbidden cells are exactly the falsifying restrictions") {
  const Triple t{2, 5, 9};
  // Every clause over a subset of the triple, every polarity.
  for (std::uint32_t subset = 1; subset < 8; ++subset) {
    for (std::uint32_t signs = 0; signs < 8; ++signs) {
      Clause c;
      for (std::uint32_t i = 0; i < 3; ++i) {
        if ((subset >> i) & 1u) c.literals.push_back({t[i], ((signs >> i) & 1u) != 0});
      }
      const auto bad = forbidden_cells(c, t);
      const std::size_t width = c.literals.size();
      CHECK(bad.size() == (std::size_t{1} << (3 - width)));
      for (std::uint32_t cell = 0; cell < 8; ++cell) {
        Assignment a(9);
        for (std::uint32_t i = 0; i < 3; ++i) a.set(t[i], (cell >> i) & 1u);
        CHECK(assignment_restriction(a, t) == cell);
        const bool listed = std::find(bad.begin(), bad.end(), cell) != bad.end();
        CHECK(listed == !satisfies(c, a));
      }
    }
  }
}

TEST_CASE("assignment restriction") {
  Assignment a(4);
  a.set(1, true);
  a.set(3, true);
  CHECK(assignment_restriction(a, {1, 2, 3}) == 5);
  CHECK(assignment_restriction(Assignment(3), {1, 2, 3}) == 0);
  Assignment b(4);
  b.set(2, true);
  b.set(3, true);
  CHECK(assignment_restriction(b, {2, 3, 4}) == 3);
}

TEST_CASE("clausal partition of single and merged clauses") {
  const ClausalState one = build_clausal_partition(Instance::from_raw(3, {{-1, 2, -3}}));
  REQUIRE(one.cubes.size() == 1);
  CHECK(one.cubes.at({1, 2, 3}).mask() == 0xDF);

  // Forbid cells 0 and 5.
  const ClausalState two = build_clausal_partition(Instance::from_raw(3, {{1, 2, 3}, {-1, 2, -3}}));
  REQUIRE(two.cubes.size() == 1);
  CHECK(two.cubes.at({1, 2, 3}).mask() == 0xDE);

  std::vector<std::vector<int>> all8;
  for (int s = 0; s < 8; ++s) all8.push_back({s & 1 ? -1 : 1, s & 2 ? -2 : 2, s & 4 ? -3 : 3});
  const ClausalState full = build_clausal_partition(Instance::from_raw(3, all8));
  CHECK(full.cubes.at({1, 2, 3}).mask() == 0x00);
}

TEST_CASE("narrow clauses are padded deterministically") {
  // Constrained vars {1,2,4,5}: (2 v 5) gains 1; (-4) gains 1 and 2.
  const Instance inst = Instance::from_raw(6, {{1, 4, 5}, {2, 5}, {-4}});
  const auto pool = padding_pool(inst);
  CHECK(pool == std::vector<Var>{1, 2, 4, 5});
  CHECK(host_triple(inst.clauses[1], pool) == Triple{1, 2, 5});
  CHECK(host_triple(inst.clauses[2], pool) == Triple{1, 2, 4});
  const ClausalState s = build_clausal_partition(inst);
  CHECK(s.cubes.size() == 3);
  CHECK(s.padding_vars.empty());
  CHECK(s.cubes.at({1, 2, 5}).mask() == 0xFC);  // u2 = u5 = F forbidden: cells 0,1
}

TEST_CASE("tiny instances pad with unconstrained and phantom ids") {
  const ClausalState a = build_clausal_partition(Instance::from_raw(2, {{1, 2}}));
  REQUIRE(a.cubes.size() == 1);
  CHECK(a.cubes.begin()->first == Triple{1, 2, 3});
  CHECK(a.padding_vars == std::vector<Var>{3});

  const ClausalState b = build_clausal_partition(Instance::from_raw(5, {{-4}}));
  CHECK(b.cubes.begin()->first == Triple{1, 2, 4});
  CHECK(b.padding_vars == std::vector<Var>{1, 2});
  CHECK(b.cubes.begin()->second.mask() == 0x0F);

  const ClausalState c = build_clausal_partition(Instance::from_raw(1, {{1}}));
  CHECK(c.cubes.begin()->first == Triple{1, 2, 3});
  CHECK(c.padding_vars == std::vector<Var>{2, 3});
}

TEST_CASE("empty clause gives a trivially unsatisfiable state") {
  const ClausalState s = build_clausal_partition(Instance::from_raw(3, {{1, 2}, {}}));
  CHECK(s.trivially_unsat);
  CHECK(s.cubes.empty());
}

TEST_CASE("cube cells are GREEN iff every hosted clause holds") {
  const Instance inst = Instance::from_raw(5, {{1, 2, 3}, {-1, -2, 3}, {2, 3, -5}, {-2, 5}, {3}});
  const ClausalState s = build_clausal_partition(inst);
  std::vector<Var> covered;
  for (const auto& [t, cube] : s.cubes) {
    covered.insert(covered.end(), t.begin(), t.end());
    for (std::uint32_t cell = 0; cell < 8; ++cell) {
      Assignment a(5);
      for (std::size_t i = 0; i < 3; ++i) a.set(t[i], (cell >> i) & 1u);
      bool ok = true;
      for (const auto& c : inst.clauses) {
        if (host_triple(c, padding_pool(inst)) == t) ok = ok && satisfies(c, a);
      }
      CHECK(cube.is_green(cell) == ok);
    }
  }
  std::sort(covered.begin(), covered.end());
  covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
  CHECK(covered == inst.constrained_vars());
}
