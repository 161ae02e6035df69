#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "partsat/dimacs.hpp"
#include "partsat/verify.hpp"

using namespace partsat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  if (out.empty()) out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("parse the complement example") {
  auto r = parse_dimacs("p cnf 3 1\n-1 2 -3 0\n");
  REQUIRE(r.ok());
  CHECK(r.instance->num_vars == 3);
  REQUIRE(r.instance->clauses.size() == 1);
  CHECK(r.instance->clauses[0].literals == std::vector<Literal>{{1, true}, {2, false}, {3, true}});
  CHECK(r.diagnostics.empty());
}

TEST_CASE("tautologies are dropped with a warning") {
  auto r = parse_dimacs("p cnf 2 1\n1 -1 0\n");
  REQUIRE(r.ok());
  CHECK(r.instance->clauses.empty());
  CHECK(r.instance->tautologies_dropped == 1);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].severity == ParseDiagnostic::Severity::Warning);
  CHECK(r.diagnostics[0].line == 2);
}

TEST_CASE("wide clauses are rejected") {
  auto r = parse_dimacs("p cnf 4 1\n1 2 3 4 0\n");
  CHECK_FALSE(r.ok());
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].line == 2);
  CHECK(r.diagnostics[0].column == 7);
  // Repeated variables do not count toward the width.
  CHECK(parse_dimacs("p cnf 3 1\n1 2 -2 3 1 0\n").ok());
}

TEST_CASE("count mismatch and a missing terminator only warn") {
  auto r = parse_dimacs("p cnf 3 2\n1 2 3 0\n");
  REQUIRE(r.ok());
  CHECK(r.warning_count() == 1);
  CHECK(r.diagnostics[0].line == 1);

  auto u = parse_dimacs("p cnf 3 1\n1 2 3");
  REQUIRE(u.ok());
  CHECK(u.instance->clauses.size() == 1);
  CHECK(u.warning_count() == 1);
}

TEST_CASE("emit") {
  CHECK(emit_dimacs(Instance{}) == "p cnf 0 0\n");
  auto r = parse_dimacs("p cnf 3 1\n-1 2 -3 0\n");
  CHECK(emit_dimacs(*r.instance) == "p cnf 3 1\n-1 2 -3 0\n");
  CHECK(emit_dimacs(Instance::from_raw(2, {{2, -1}})) == "p cnf 2 1\n-1 2 0\n");
}

TEST_CASE("corpus round-trips") {
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(fs::path(PARTSAT_TEST_DATA) / "corpus")) {
    CAPTURE(entry.path().string());
    auto r = parse_dimacs(slurp(entry.path()));
    REQUIRE(r.ok());
    Instance canonical = *r.instance;
    canonical.tautologies_dropped = 0;
    auto again = parse_dimacs(emit_dimacs(canonical));
    REQUIRE(again.ok());
    CHECK(*again.instance == canonical);
    CHECK(emit_dimacs(*again.instance) == emit_dimacs(canonical));
    ++files;
  }
  CHECK(files >= 5);
}

TEST_CASE("corpus specifics") {
  const fs::path dir = fs::path(PARTSAT_TEST_DATA) / "corpus";
  auto spanning = parse_dimacs(slurp(dir / "spanning.cnf"));
  REQUIRE(spanning.ok());
  CHECK(spanning.instance->clauses.size() == 3);
  auto satlib = parse_dimacs(slurp(dir / "satlib_trailer.cnf"));
  REQUIRE(satlib.ok());
  CHECK(satlib.instance->clauses.size() == 2);
  CHECK(satlib.diagnostics.empty());
  auto empty = parse_dimacs(slurp(dir / "empty_clause.cnf"));
  REQUIRE(empty.ok());
  CHECK(empty.instance->has_empty_clause);
}

TEST_CASE("malformed fixtures point at the right line") {
  const fs::path dir = fs::path(PARTSAT_TEST_DATA) / "malformed";
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  REQUIRE(manifest.size() >= 8);
  for (const auto& item : manifest) {
    const std::string file = item["file"];
    CAPTURE(file);
    const std::string text = slurp(dir / file);
    auto r = parse_dimacs(text);
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.diagnostics.empty());
    const auto& d = r.diagnostics.front();
    CHECK(d.severity == ParseDiagnostic::Severity::Error);
    CHECK(d.line == item["line"].get<std::size_t>());
    CHECK(d.column == item["column"].get<std::size_t>());
    CHECK(d.message.find(item["contains"].get<std::string>()) != std::string::npos);
  }
}

TEST_CASE("every diagnostic lands inside the text") {
  std::mt19937_64 rng(4);
  const std::string alphabet = "p cnf 0123456789-\n\nxc%";
  for (int i = 0; i < 2000; ++i) {
    std::string text = "p cnf 5 3\n";
    const std::size_t len = rng() % 40;
    for (std::size_t j = 0; j < len; ++j) text += alphabet[rng() % alphabet.size()];
    const auto lines = lines_of(text);
    for (const auto& d : parse_dimacs(text).diagnostics) {
      CAPTURE(text);
      REQUIRE(d.line >= 1);
      REQUIRE(d.line <= lines.size());
      CHECK(d.column >= 1);
      CHECK(d.column <= lines[d.line - 1].size() + 1);
    }
  }
}

TEST_CASE("parse(emit(x)) is the identity on canonical instances") {
  for (bool mixed : {false, true}) {
    const auto instances = verify::sample_instances({200, 3, 25, 0.0, 6.0, 8, mixed});
    for (const auto& inst : instances) {
      Instance canonical = inst;
      canonical.tautologies_dropped = 0;
      auto r = parse_dimacs(emit_dimacs(canonical));
      REQUIRE(r.ok());
      CHECK(*r.instance == canonical);
    }
  }
}

TEST_CASE("random 3SAT generator") {
  CHECK(gen_random_3sat(3, 0, 99).clauses.empty());
  CHECK(gen_random_3sat(12, 50, 5) == gen_random_3sat(12, 50, 5));
  CHECK(emit_dimacs(gen_random_3sat(12, 50, 5)) == emit_dimacs(gen_random_3sat(12, 50, 5)));
  CHECK_FALSE(gen_random_3sat(12, 50, 5) == gen_random_3sat(12, 50, 6));

  const Instance g = gen_random_3sat(10, 42, 7);
  CHECK(g.clauses.size() == 42);
  for (const auto& c : g.clauses) {
    REQUIRE(c.literals.size() == 3);
    CHECK(c.literals[0].var < c.literals[1].var);
    CHECK(c.literals[1].var < c.literals[2].var);
    CHECK(c.literals[2].var <= 10);
    CHECK(c.literals[0].var >= 1);
  }
  CHECK_THROWS_AS(gen_random_3sat(2, 1, 0), InstanceError);
}

TEST_CASE("generator output is pinned") {
  // Guards the documented algorithm against accidental drift.
  const std::string text = emit_dimacs(gen_random_3sat(5, 3, 42));
  CHECK(text == "p cnf 5 3\n-1 2 -5 0\n2 -4 -5 0\n1 -2 -3 0\n");
}
