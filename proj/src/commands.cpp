#include "partsat/commands.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "partsat/dimacs.hpp"
#include "partsat/oracle.hpp"
#include "partsat/verify.hpp"

namespace partsat::cli {

using nlohmann::ordered_json;

namespace {

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

bool oracle_allowed(OracleMode mode, std::size_t num_vars) {
  switch (mode) {
    case OracleMode::Off:
      return false;
    case OracleMode::On:
      return num_vars <= oracle::kMaxDecideVars;
    case OracleMode::Auto:
      return num_vars <= oracle::kMaxCountVars;
  }
  return false;
}

void print_diagnostics(const ParseResult& parsed, std::string_view name, std::ostream& err) {
  for (const auto& d : parsed.diagnostics) err << name << ':' << d.to_string() << '\n';
}

struct LoadedInput {
  Instance instance;
  std::string source;
  std::optional<std::uint64_t> seed;
};

// Reads --input or generates from --gen. Returns nullopt after reporting a
// usage or parse error.
std::optional<LoadedInput> load_input(const RunConfig& config, std::ostream& err) {
  if (config.input && config.gen) {
    err << "error: --input and --gen are mutually exclusive\n";
    return std::nullopt;
  }
  if (config.gen) {
    const GenSpec& g = *config.gen;
    if (g.m_lo != g.m_hi || g.count != 1) {
      err << "error: solve/trace take a single instance (one m value, count=1)\n";
      return std::nullopt;
    }
    try {
      return LoadedInput{gen_random_3sat(g.n, g.m_lo, g.seed), "gen:" + g.to_string(), g.seed};
    } catch (const InstanceError& e) {
      err << "error: " << e.what() << '\n';
      return std::nullopt;
    }
  }
  if (!config.input) {
    err << "error: one of --input or --gen is required\n";
    return std::nullopt;
  }
  std::string text;
  if (*config.input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(*config.input, std::ios::binary);
    if (!in) {
      err << "error: cannot open " << *config.input << '\n';
      return std::nullopt;
    }
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  const std::string name = *config.input == "-" ? "<stdin>" : *config.input;
  ParseResult parsed = parse_dimacs(text);
  print_diagnostics(parsed, name, err);
  if (!parsed.ok()) return std::nullopt;
  return LoadedInput{std::move(*parsed.instance), *config.input, std::nullopt};
}

bool write_output(const std::optional<std::string>& path, const std::string& text,
                  std::ostream& out, std::ostream& err) {
  if (!path || *path == "-") {
    out << text;
    return true;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) {
    err << "error: cannot write " << *path << '\n';
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

ordered_json rate(std::size_t num, std::size_t den) {
  if (den == 0) return nullptr;
  return static_cast<double>(num) / static_cast<double>(den);
}

ordered_json mean(std::size_t total, std::size_t count) {
  if (count == 0) return nullptr;
  return static_cast<double>(total) / static_cast<double>(count);
}

}  // namespace

std::string GenSpec::to_string() const {
  std::ostringstream out;
  out << "n=" << n << ",m=" << m_lo;
  if (m_hi != m_lo) out << ".." << m_hi << ",step=" << m_step;
  out << ",seed=" << seed;
  if (count != 1) out << ",count=" << count;
  return out.str();
}

std::optional<GenSpec> parse_gen_spec(std::string_view text, std::string& error) {
  GenSpec g;
  bool has_n = false, has_m = false, has_seed = false;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      error = "expected key=value in generator spec, got '" + std::string(item) + "'";
      return std::nullopt;
    }
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    bool ok = false;
    if (key == "n") {
      ok = parse_number(value, g.n);
      has_n = true;
    } else if (key == "m") {
      const auto dots = value.find("..");
      if (dots == std::string_view::npos) {
        ok = parse_number(value, g.m_lo);
        g.m_hi = g.m_lo;
      } else {
        ok = parse_number(value.substr(0, dots), g.m_lo) &&
             parse_number(value.substr(dots + 2), g.m_hi) && g.m_lo <= g.m_hi;
      }
      has_m = true;
    } else if (key == "step") {
      ok = parse_number(value, g.m_step) && g.m_step > 0;
    } else if (key == "seed") {
      ok = parse_number(value, g.seed);
      has_seed = true;
    } else if (key == "count") {
      ok = parse_number(value, g.count) && g.count > 0;
    } else {
      error = "unknown generator key '" + std::string(key) + "'";
      return std::nullopt;
    }
    if (!ok) {
      error = "bad value for generator key '" + std::string(key) + "': '" + std::string(value) + "'";
      return std::nullopt;
    }
  }
  if (!has_n || !has_m || !has_seed) {
    error = "generator spec needs n, m and seed";
    return std::nullopt;
  }
  return g;
}

std::optional<OrderPolicy> parse_order(std::string_view text) {
  if (text == "fifo") return OrderPolicy::fifo();
  constexpr std::string_view prefix = "random:";
  if (text.substr(0, prefix.size()) == prefix) {
    std::uint64_t seed = 0;
    if (parse_number(text.substr(prefix.size()), seed)) return OrderPolicy::random(seed);
  }
  return std::nullopt;
}

std::string order_name(const OrderPolicy& order) {
  return order.kind == OrderPolicy::Kind::Fifo ? "fifo" : "random:" + std::to_string(order.seed);
}

SolveBundle solve_instance(const Instance& instance, const SolveOptions& options) {
  SolveBundle b;
  b.instance = instance;
  b.order = order_name(options.order);
  if (options.order.kind == OrderPolicy::Kind::Random) b.order_seed = options.order.seed;
  b.initial = build_clausal_partition(instance);

  if (!b.initial.trivially_unsat) {
    FixpointOptions fo;
    fo.order = options.order;
    fo.trace = options.trace;
    b.engine = fixpoint(b.initial, fo);
    if (options.extract && !b.engine->has_empty_cube()) {
      b.extraction_attempted = true;
      b.extraction = extract_assignment(*b.engine, instance);
    }
  }

  if (options.oracle != OracleMode::Off) {
    if (oracle_allowed(options.oracle, instance.num_vars)) {
      b.oracle = oracle::brute_force_sat(instance);
      b.oracle_status = "ran";
    } else {
      b.oracle_status = "guard_exceeded";
    }
  }
  return b;
}

int exit_code_for(const SolveBundle& b) {
  if (auto agrees = b.oracle_agrees(); agrees && !*agrees) return kExitDisagree;
  return b.engine_unsat() ? kExitUnsat : kExitOk;
}

std::uint64_t bench_instance_seed(std::uint64_t base, std::size_t m, std::size_t index) {
  return splitmix64(base ^ splitmix64((static_cast<std::uint64_t>(m) << 32) ^ index));
}

ordered_json run_bench(const BenchOptions& options) {
  const GenSpec& g = options.gen;
  ordered_json report;
  report["tool"] = kToolName;
  report["version"] = kToolVersion;
  ordered_json cfg;
  cfg["n"] = g.n;
  cfg["m_from"] = g.m_lo;
  cfg["m_to"] = g.m_hi;
  cfg["step"] = g.m_step;
  cfg["seed"] = g.seed;
  cfg["count"] = g.count;
  cfg["order"] = order_name(options.order);
  cfg["oracle"] = options.oracle == OracleMode::On ? "on" : options.oracle == OracleMode::Off ? "off" : "auto";
  report["config"] = std::move(cfg);

  ordered_json points = ordered_json::array();
  ordered_json counterexamples = ordered_json::array();
  std::size_t total_instances = 0, total_oracle = 0, total_agree = 0, total_sound = 0, total_gaps = 0;

  for (std::size_t m = g.m_lo; m <= g.m_hi; m += g.m_step) {
    std::size_t engine_unsat = 0, oracle_ran = 0, oracle_unsat = 0, agree = 0;
    std::size_t soundness = 0, gaps = 0, passes = 0, apps = 0, removed = 0;
    std::size_t extract_tried = 0, extract_verified = 0;
    const auto start = std::chrono::steady_clock::now();

    for (std::size_t i = 0; i < g.count; ++i) {
      const std::uint64_t seed = bench_instance_seed(g.seed, m, i);
      const Instance inst = gen_random_3sat(g.n, m, seed);
      SolveOptions so;
      so.oracle = options.oracle;
      so.order = options.order;
      const SolveBundle b = solve_instance(inst, so);

      engine_unsat += b.engine_unsat();
      if (b.engine) {
        passes += b.engine->stats.passes;
        apps += b.engine->stats.applications;
        removed += b.engine->stats.cells_removed;
      }
      if (b.extraction_attempted) {
        ++extract_tried;
        extract_verified += b.extraction && b.extraction->verified;
      }
      if (!b.oracle) continue;
      ++oracle_ran;
      oracle_unsat += !b.oracle->satisfiable;
      if (*b.oracle_agrees()) {
        ++agree;
        continue;
      }
      const bool sound_violation = b.engine_unsat();
      (sound_violation ? soundness : gaps) += 1;
      ordered_json cex;
      cex["m"] = m;
      cex["index"] = i;
      cex["kind"] = sound_violation ? "soundness_violation" : "completeness_gap";
      cex["gen"] = GenSpec{g.n, m, m, 1, seed, 1}.to_string();
      cex["dimacs"] = emit_dimacs(inst);
      counterexamples.push_back(std::move(cex));
    }

    ordered_json p;
    p["m"] = m;
    p["ratio"] = static_cast<double>(m) / static_cast<double>(g.n);
    p["instances"] = g.count;
    p["engine_unsat"] = engine_unsat;
    p["oracle_run"] = oracle_ran;
    p["oracle_skipped"] = g.count - oracle_ran;
    p["oracle_unsat"] = oracle_unsat;
    p["agreements"] = agree;
    p["agreement_rate"] = rate(agree, oracle_ran);
    p["soundness_violations"] = soundness;
    p["completeness_gaps"] = gaps;
    p["completeness_rate"] = rate(oracle_unsat - gaps, oracle_unsat);
    p["mean_passes"] = mean(passes, g.count);
    p["mean_applications"] = mean(apps, g.count);
    p["mean_cells_removed"] = mean(removed, g.count);
    p["extraction_attempted"] = extract_tried;
    p["extraction_verified"] = extract_verified;
    if (options.timing) {
      p["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    points.push_back(std::move(p));

    total_instances += g.count;
    total_oracle += oracle_ran;
    total_agree += agree;
    total_sound += soundness;
    total_gaps += gaps;
    if (g.m_hi - m < g.m_step) break;
  }

  report["points"] = std::move(points);
  ordered_json totals;
  totals["instances"] = total_instances;
  totals["oracle_run"] = total_oracle;
  totals["agreements"] = total_agree;
  totals["soundness_violations"] = total_sound;
  totals["completeness_gaps"] = total_gaps;
  report["totals"] = std::move(totals);
  report["counterexamples"] = std::move(counterexamples);
  return report;
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto input = load_input(config, err);
  if (!input) return kExitUsage;
  std::vector<TraceRecord> trace;
  SolveOptions so;
  so.oracle = config.oracle;
  so.order = config.order;
  if (config.trace) so.trace = &trace;
  SolveBundle b = solve_instance(input->instance, so);
  b.source = input->source;
  b.generator_seed = input->seed;
  if (config.oracle == OracleMode::On && b.oracle_status == "guard_exceeded") {
    err << "warning: oracle skipped; " << b.instance.num_vars << " variables exceed its limit of "
        << oracle::kMaxDecideVars << '\n';
  }
  if (!write_output(config.out, write_report(b), out, err)) return kExitUsage;
  if (config.trace && !write_output(config.trace, trace_json(b, trace).dump(2) + "\n", out, err)) {
    return kExitUsage;
  }
  const int code = exit_code_for(b);
  if (code == kExitDisagree) {
    err << "disagreement: engine says " << engine_verdict_name(b) << ", oracle says "
        << (b.oracle->satisfiable ? "sat" : "unsat") << '\n';
  }
  return code;
}

int cmd_trace(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto input = load_input(config, err);
  if (!input) return kExitUsage;
  std::vector<TraceRecord> trace;
  SolveOptions so;
  so.oracle = OracleMode::Off;
  so.order = config.order;
  so.extract = false;
  so.trace = &trace;
  SolveBundle b = solve_instance(input->instance, so);
  b.source = input->source;
  b.generator_seed = input->seed;
  const auto& path = config.trace ? config.trace : config.out;
  if (!write_output(path, trace_json(b, trace).dump(2) + "\n", out, err)) return kExitUsage;
  return exit_code_for(b);
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  verify::VerifyOptions vo;
  vo.quick = config.quick;
  if (!config.mutate.empty()) {
    auto fn = verify::mutated_bc(config.mutate);
    if (!fn) {
      err << "error: unknown mutation '" << config.mutate << "'\n";
      return kExitUsage;
    }
    vo.bc_fn = *fn;
  }
  std::size_t failed = 0;
  for (const auto& r : verify::run_verify(vo)) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)";
    if (!r.detail.empty()) out << ": " << r.detail;
    out << '\n';
    failed += !r.passed;
  }
  out << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
  return failed == 0 ? kExitOk : kExitFailure;
}

int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.input) {
    err << "error: bench takes --gen, not --input\n";
    return kExitUsage;
  }
  if (!config.gen) {
    err << "error: bench needs --gen n=<n>,m=<lo>..<hi>,seed=<s>[,step=<d>][,count=<k>]\n";
    return kExitUsage;
  }
  if (config.gen->n < 3) {
    err << "error: bench needs n >= 3\n";
    return kExitUsage;
  }
  BenchOptions bo{*config.gen, config.oracle, config.order, config.timing};
  const ordered_json report = run_bench(bo);
  if (!write_output(config.out, report.dump(2) + "\n", out, err)) return kExitUsage;

  if (config.cex_dir) {
    std::filesystem::create_directories(*config.cex_dir);
    for (const auto& cex : report["counterexamples"]) {
      const std::string name = cex["kind"].get<std::string>() + "_m" +
                               std::to_string(cex["m"].get<std::size_t>()) + "_i" +
                               std::to_string(cex["index"].get<std::size_t>()) + ".cnf";
      std::ofstream f(std::filesystem::path(*config.cex_dir) / name);
      f << "c " << cex["kind"].get<std::string>() << " gen " << cex["gen"].get<std::string>() << '\n'
        << cex["dimacs"].get<std::string>();
    }
  }
  return report["totals"]["soundness_violations"].get<std::size_t>() == 0 ? kExitOk : kExitDisagree;
}

}  // namespace partsat::cli
