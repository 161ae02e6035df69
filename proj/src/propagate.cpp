#include "partsat/propagate.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "partsat/rng.hpp"

namespace partsat {

namespace {

std::size_t overlap_of(const Triple& a, const Triple& b) {
  std::size_t n = 0;
  for (Var x : a) n += static_cast<std::size_t>(std::count(b.begin(), b.end(), x));
  return n;
}

void require_propagatable(const ClausalState& state) {
  if (state.trivially_unsat) {
    throw std::invalid_argument("cannot propagate a state built from an empty clause");
  }
}

std::vector<Partition> cube_vector(const ClausalState& state) {
  std::vector<Partition> cubes;
  cubes.reserve(state.cubes.size());
  for (const auto& [_, cube] : state.cubes) cubes.push_back(cube);
  return cubes;
}

ClausalState to_state(const ClausalState& like, const AdjacencyGraph& graph,
                      std::vector<Partition> cubes) {
  ClausalState out;
  out.padding_vars = like.padding_vars;
  for (std::size_t i = 0; i < cubes.size(); ++i) out.cubes.emplace(graph.nodes[i], std::move(cubes[i]));
  return out;
}

PropagationResult finish(const ClausalState& initial, ClausalState fixpoint_state,
                         PropagationStats stats) {
  stats.cells_removed = initial.green_count() - fixpoint_state.green_count();
  Verdict verdict = NoEmptyCube{};
  if (auto t = first_empty_cube(fixpoint_state)) verdict = EmptyCube{*t};
  return {std::move(fixpoint_state), verdict, stats};
}

// Queue of edge or pair indices with dedup and generation tracking. FIFO pops
// the front; Random pops a uniformly chosen queued entry.
class Worklist {
 public:
  Worklist(std::size_t universe, OrderPolicy order)
      : order_(order), rng_(order.seed), queued_(universe, 0), generation_(universe, 0) {}

  void push(std::size_t item, std::size_t generation) {
    if (queued_[item]) return;
    queued_[item] = 1;
    generation_[item] = generation;
    items_.push_back(item);
  }

  bool empty() const { return items_.empty(); }

  // Returns {item, generation}.
  std::pair<std::size_t, std::size_t> pop() {
    std::size_t item;
    if (order_.kind == OrderPolicy::Kind::Fifo) {
      item = items_.front();
      items_.pop_front();
    } else {
      const auto pick = static_cast<std::size_t>(uniform_below(rng_, items_.size()));
      std::swap(items_[pick], items_.back());
      item = items_.back();
      items_.pop_back();
    }
    queued_[item] = 0;
    return {item, generation_[item]};
  }

 private:
  OrderPolicy order_;
  std::mt19937_64 rng_;
  std::deque<std::size_t> items_;
  std::vector<char> queued_;
  std::vector<std::size_t> generation_;
};

}  // namespace

std::optional<Triple> first_empty_cube(const ClausalState& state) {
  for (const auto& [t, cube] : state.cubes) {
    if (cube.all_red()) return t;
  }
  return std::nullopt;
}

AdjacencyGraph build_adjacency(const ClausalState& state) {
  AdjacencyGraph g;
  for (const auto& [t, _] : state.cubes) g.nodes.push_back(t);
  g.out_edges.resize(g.nodes.size());
  for (std::size_t s = 0; s < g.nodes.size(); ++s) {
    for (std::size_t t = 0; t < g.nodes.size(); ++t) {
      if (s == t) continue;
      const auto k = overlap_of(g.nodes[s], g.nodes[t]);
      if (k == 0) continue;
      g.out_edges[s].push_back(g.edges.size());
      g.edges.push_back({s, t, k});
    }
  }
  return g;
}

ApplyOutcome apply_edge(const ClausalState& state, const AdjacencyGraph& graph,
                        const Edge& edge) {
  ApplyOutcome out{state, false};
  const Triple& src = graph.nodes.at(edge.source);
  const Triple& dst = graph.nodes.at(edge.target);
  Partition& target = out.state.cubes.at(dst);
  Partition next = bc_uni(target, state.cubes.at(src));
  out.changed = next != target;
  target = std::move(next);
  return out;
}

PropagationResult fixpoint(const ClausalState& state, const FixpointOptions& options) {
  require_propagatable(state);
  const AdjacencyGraph graph = build_adjacency(state);
  std::vector<Partition> cubes = cube_vector(state);
  PropagationStats stats;

  const bool stop_early = !options.full_closure;
  const bool starts_empty =
      std::any_of(cubes.begin(), cubes.end(), [](const Partition& p) { return p.all_red(); });

  Worklist work(graph.edges.size(), options.order);
  if (!(stop_early && starts_empty)) {
    for (std::size_t e = 0; e < graph.edges.size(); ++e) work.push(e, 1);
  }

  while (!work.empty()) {
    const auto [e, generation] = work.pop();
    const Edge& edge = graph.edges[e];
    stats.passes = std::max(stats.passes, generation);
    ++stats.applications;

    Partition& target = cubes[edge.target];
    Partition next = bc_uni(target, cubes[edge.source]);
    const std::size_t removed = target.green_count() - next.green_count();
    if (options.trace) {
      options.trace->push_back({graph.nodes[edge.source], graph.nodes[edge.target],
                                target.mask(), next.mask(), removed});
    }
    if (removed == 0) continue;

    target = std::move(next);
    ++stats.changing_applications;
    if (stop_early && target.all_red()) break;
    for (std::size_t out : graph.out_edges[edge.target]) work.push(out, generation + 1);
  }

  return finish(state, to_state(state, graph, std::move(cubes)), stats);
}

PropagationResult bidirectional_fixpoint(const ClausalState& state, bool full_closure) {
  require_propagatable(state);
  const AdjacencyGraph graph = build_adjacency(state);
  std::vector<Partition> cubes = cube_vector(state);
  PropagationStats stats;

  // Undirected pairs (a < b) and, per node, the pairs it belongs to.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<std::size_t>> incident(graph.nodes.size());
  for (const Edge& e : graph.edges) {
    if (e.source < e.target) {
      incident[e.source].push_back(pairs.size());
      incident[e.target].push_back(pairs.size());
      pairs.emplace_back(e.source, e.target);
    }
  }

  const bool starts_empty =
      std::any_of(cubes.begin(), cubes.end(), [](const Partition& p) { return p.all_red(); });
  Worklist work(pairs.size(), OrderPolicy::fifo());
  if (full_closure || !starts_empty) {
    for (std::size_t i = 0; i < pairs.size(); ++i) work.push(i, 1);
  }

  while (!work.empty()) {
    const auto [i, generation] = work.pop();
    const auto [a, b] = pairs[i];
    stats.passes = std::max(stats.passes, generation);
    ++stats.applications;

    auto [na, nb] = bc(cubes[a], cubes[b]);
    bool emptied = false;
    for (auto [node, next] : {std::pair{a, &na}, std::pair{b, &nb}}) {
      if (*next == cubes[node]) continue;
      cubes[node] = std::move(*next);
      ++stats.changing_applications;
      emptied = emptied || cubes[node].all_red();
      for (std::size_t p : incident[node]) work.push(p, generation + 1);
    }
    if (emptied && !full_closure) break;
  }

  return finish(state, to_state(state, graph, std::move(cubes)), stats);
}

std::optional<Extraction> extract_assignment(const PropagationResult& result,
                                             const Instance& instance) {
  if (result.has_empty_cube()) {
    throw std::logic_error("extract_assignment called on an empty-cube result");
  }
  ClausalState current = result.fixpoint;

  std::vector<Var> vars;
  for (const auto& [t, _] : current.cubes) vars.insert(vars.end(), t.begin(), t.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

  Assignment chosen(std::max<std::size_t>(instance.num_vars, current.max_var()));
  for (Var v : vars) {
    bool fixed = false;
    for (bool value : {false, true}) {
      ClausalState trial = current;
      const Partition unit = Partition::from_mask({v}, value ? 0b10 : 0b01);
      for (auto& [t, cube] : trial.cubes) {
        if (cube.position_of(v) >= 0) cube = impose(cube, unit);
      }
      PropagationResult r = fixpoint(trial);
      if (r.has_empty_cube()) continue;
      current = std::move(r.fixpoint);
      chosen.set(v, value);
      fixed = true;
      break;
    }
    if (!fixed) return std::nullopt;
  }

  Assignment out(instance.num_vars);
  for (Var v = 1; v <= instance.num_vars; ++v) out.set(v, chosen.value(v));
  return Extraction{out, satisfies(instance, out)};
}

}  // namespace partsat
