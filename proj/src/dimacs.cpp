#include "partsat/dimacs.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <sstream>

#include "partsat/rng.hpp"

namespace partsat {

std::string ParseDiagnostic::to_string() const {
  std::ostringstream out;
  out << line << ':' << column << ": "
      << (severity == Severity::Error ? "error" : "warning") << ": " << message;
  return out.str();
}

std::size_t ParseResult::warning_count() const {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(), [](const ParseDiagnostic& d) {
        return d.severity == ParseDiagnostic::Severity::Warning;
      }));
}

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<Token> split_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), line_no, start + 1});
  }
  return out;
}

std::optional<long long> to_integer(std::string_view s) {
  long long v = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

class Parser {
 public:
  ParseResult run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size() && !stopped_) {
      const std::size_t nl = text.find('\n', pos);
      const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
      ++line_no;
      handle_line(text.substr(pos, end - pos), line_no);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    finish();

    ParseResult result;
    result.diagnostics = std::move(diags_);
    const bool has_error =
        std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                    [](const auto& d) { return d.severity == ParseDiagnostic::Severity::Error; });
    if (!has_error) result.instance = std::move(instance_);
    return result;
  }

 private:
  void error(std::size_t line, std::size_t col, std::string msg) {
    diags_.push_back({line, col, std::move(msg), ParseDiagnostic::Severity::Error});
  }
  void warning(std::size_t line, std::size_t col, std::string msg) {
    diags_.push_back({line, col, std::move(msg), ParseDiagnostic::Severity::Warning});
  }

  void handle_line(std::string_view line, std::size_t line_no) {
    auto tokens = split_line(line, line_no);
    if (tokens.empty()) return;
    const Token& first = tokens.front();
    if (first.text.front() == 'c') return;
    if (first.text == "%") {
      stopped_ = true;
      return;
    }
    if (first.text == "p") {
      handle_header(tokens);
      return;
    }
    for (const Token& tok : tokens) handle_literal(tok);
  }

  void handle_header(const std::vector<Token>& tokens) {
    const Token& p = tokens.front();
    if (header_seen_) {
      error(p.line, p.column, "duplicate problem line");
      return;
    }
    header_seen_ = true;
    header_line_ = p.line;
    header_column_ = p.column;
    if (tokens.size() != 4 || tokens[1].text != "cnf") {
      error(p.line, p.column, "malformed problem line; expected 'p cnf <vars> <clauses>'");
      header_bad_ = true;
      return;
    }
    for (std::size_t i = 2; i < 4; ++i) {
      auto v = to_integer(tokens[i].text);
      if (!v || *v < 0) {
        error(tokens[i].line, tokens[i].column,
              "problem line count '" + std::string(tokens[i].text) +
                  "' is not a non-negative integer");
        header_bad_ = true;
        return;
      }
      (i == 2 ? declared_vars_ : declared_clauses_) = static_cast<std::size_t>(*v);
    }
    instance_.num_vars = declared_vars_;
  }

  void handle_literal(const Token& tok) {
    if (!header_seen_) {
      if (!missing_header_reported_) {
        error(tok.line, tok.column, "clause data before the 'p cnf' problem line");
        missing_header_reported_ = true;
      }
      return;
    }
    if (header_bad_) return;
    auto v = to_integer(tok.text);
    if (!v) {
      error(tok.line, tok.column, "expected an integer literal, found '" + std::string(tok.text) + "'");
      skip_clause_ = true;
      return;
    }
    if (current_.empty() && !skip_clause_) {
      clause_line_ = tok.line;
      clause_column_ = tok.column;
    }
    if (*v == 0) {
      end_clause();
      return;
    }
    const long long mag = *v < 0 ? -*v : *v;
    if (static_cast<unsigned long long>(mag) > declared_vars_) {
      error(tok.line, tok.column,
            "literal " + std::string(tok.text) + " out of range for " +
                std::to_string(declared_vars_) + " variables");
      skip_clause_ = true;
      return;
    }
    if (skip_clause_) return;
    const Var var = static_cast<Var>(mag);
    if (std::find(vars_.begin(), vars_.end(), var) == vars_.end()) {
      vars_.push_back(var);
      if (vars_.size() == 4) {
        error(tok.line, tok.column, "clause width exceeds 3 distinct variables (3SAT only)");
        skip_clause_ = true;
        return;
      }
    }
    current_.push_back(static_cast<int>(*v));
  }

  void end_clause() {
    ++clauses_read_;
    if (!skip_clause_) {
      auto canon = canonicalize(current_, declared_vars_);
      switch (canon.kind) {
        case Canonical::Kind::Clause:
          instance_.clauses.push_back(std::move(canon.clause));
          break;
        case Canonical::Kind::Tautology:
          ++instance_.tautologies_dropped;
          warning(clause_line_, clause_column_, "tautological clause dropped");
          break;
        case Canonical::Kind::Empty:
          instance_.has_empty_clause = true;
          warning(clause_line_, clause_column_, "empty clause; instance is unsatisfiable");
          break;
      }
    }
    current_.clear();
    vars_.clear();
    skip_clause_ = false;
  }

  void finish() {
    if (!header_seen_) {
      if (!missing_header_reported_) error(1, 1, "missing 'p cnf' problem line");
      return;
    }
    if (header_bad_) return;
    if (!current_.empty() || skip_clause_) {
      warning(clause_line_, clause_column_, "last clause is not terminated by 0");
      end_clause();
    }
    if (clauses_read_ != declared_clauses_) {
      warning(header_line_, header_column_,
              "problem line declares " + std::to_string(declared_clauses_) +
                  " clauses but " + std::to_string(clauses_read_) + " were read");
    }
  }

  Instance instance_;
  std::vector<ParseDiagnostic> diags_;
  bool header_seen_ = false;
  bool header_bad_ = false;
  bool missing_header_reported_ = false;
  bool stopped_ = false;
  std::size_t header_line_ = 1;
  std::size_t header_column_ = 1;
  std::size_t declared_vars_ = 0;
  std::size_t declared_clauses_ = 0;
  std::size_t clauses_read_ = 0;

  std::vector<int> current_;
  std::vector<Var> vars_;
  bool skip_clause_ = false;
  std::size_t clause_line_ = 1;
  std::size_t clause_column_ = 1;
};

}  // namespace

ParseResult parse_dimacs(std::string_view text) { return Parser{}.run(text); }

std::string emit_dimacs(const Instance& instance) {
  std::ostringstream out;
  out << "p cnf " << instance.num_vars << ' '
      << instance.clauses.size() + (instance.has_empty_clause ? 1 : 0) << '\n';
  if (instance.has_empty_clause) out << "0\n";
  for (const auto& c : instance.clauses) {
    for (const auto& lit : c.literals) out << lit.to_int() << ' ';
    out << "0\n";
  }
  return out.str();
}

Instance gen_random_3sat(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 3) throw InstanceError("gen_random_3sat needs at least 3 variables, got " + std::to_string(n));
  std::mt19937_64 rng(seed);
  Instance out;
  out.num_vars = n;
  out.clauses.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Var picked[3];
    for (std::size_t j = 0; j < 3; ++j) {
      Var v;
      do {
        v = static_cast<Var>(uniform_below(rng, n)) + 1;
      } while (std::find(picked, picked + j, v) != picked + j);
      picked[j] = v;
    }
    const std::uint64_t signs = rng();
    Clause c;
    for (std::size_t j = 0; j < 3; ++j) c.literals.push_back({picked[j], ((signs >> j) & 1u) != 0});
    std::sort(c.literals.begin(), c.literals.end());
    out.clauses.push_back(std::move(c));
  }
  return out;
}

}  // namespace partsat
