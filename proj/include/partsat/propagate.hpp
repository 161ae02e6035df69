#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "partsat/clausal.hpp"

namespace partsat {

/// Directed edge between two cubes sharing one or two variables.
struct Edge {
  std::size_t source = 0;  // node index
  std::size_t target = 0;
  std::size_t overlap = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Virtual-cluster adjacency over the cubes of a ClausalState. Nodes are the
/// triples in lexicographic order; edges are sorted by (source, target).
struct AdjacencyGraph {
  std::vector<Triple> nodes;
  std::vector<Edge> edges;
  /// out_edges[n] lists indices into edges whose source is n.
  std::vector<std::vector<std::size_t>> out_edges;
};

AdjacencyGraph build_adjacency(const ClausalState& state);

/// Edge scheduling for the worklist.
struct OrderPolicy {
  enum class Kind { Fifo, Random };
  Kind kind = Kind::Fifo;
  std::uint64_t seed = 0;

  static OrderPolicy fifo() { return {}; }
  static OrderPolicy random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

struct TraceRecord {
  Triple source{};
  Triple target{};
  std::uint64_t before = 0;
  std::uint64_t after = 0;
  std::size_t removed = 0;
};

struct FixpointOptions {
  OrderPolicy order;
  /// Keep propagating after a cube empties (otherwise stop at the first).
  bool full_closure = false;
  /// When set, every edge application is appended here.
  std::vector<TraceRecord>* trace = nullptr;
};

struct NoEmptyCube {
  friend bool operator==(const NoEmptyCube&, const NoEmptyCube&) = default;
};
struct EmptyCube {
  Triple triple{};
  friend bool operator==(const EmptyCube&, const EmptyCube&) = default;
};
using Verdict = std::variant<NoEmptyCube, EmptyCube>;

struct PropagationStats {
  std::size_t passes = 0;
  std::size_t applications = 0;
  std::size_t changing_applications = 0;
  std::size_t cells_removed = 0;
};

struct PropagationResult {
  ClausalState fixpoint;
  Verdict verdict;
  PropagationStats stats;

  bool has_empty_cube() const { return std::holds_alternative<EmptyCube>(verdict); }
};

struct ApplyOutcome {
  ClausalState state;
  bool changed = false;
};

/// Replaces the edge's target cube with bc_uni(target, source).
ApplyOutcome apply_edge(const ClausalState& state, const AdjacencyGraph& graph,
                        const Edge& edge);

/// Runs the one-way operator over a worklist of directed edges until no
/// application changes a cube.
PropagationResult fixpoint(const ClausalState& state, const FixpointOptions& options = {});

/// Same closure, but each step applies the symmetric bc to an undirected pair.
PropagationResult bidirectional_fixpoint(const ClausalState& state, bool full_closure = false);

struct Extraction {
  Assignment assignment;  // covers 1..num_vars
  bool verified = false;
};

/*
 * Greedy assignment recovery from a NoEmptyCube result. Variables are fixed in
 * ascending order, F before T, each choice imposed on every cube holding the
 * variable and re-propagated. A variable where both values empty a cube ends
 * the search with no result. Unconstrained variables are F.
 *
 * Throws std::logic_error when the result has an empty cube.
 */
std::optional<Extraction> extract_assignment(const PropagationResult& result,
                                             const Instance& instance);

/// Triple of the first all-RED cube, if any.
std::optional<Triple> first_empty_cube(const ClausalState& state);

}  // namespace partsat
