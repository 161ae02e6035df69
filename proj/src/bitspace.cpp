#include "partsat/bitspace.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace partsat {

Color ws(Color a, Color b) noexcept {
  return (a == Color::Green || b == Color::Green) ? Color::Green : Color::Red;
}

Color bs(Color a, Color b) noexcept {
  return (a == Color::Red || b == Color::Red) ? Color::Red : Color::Green;
}

Color apply(Op op, Color a, Color b) noexcept {
  return op == Op::WS ? ws(a, b) : bs(a, b);
}

namespace {

std::size_t word_count(std::size_t dim) {
  return dim >= 6 ? (std::size_t{1} << (dim - 6)) : 1;
}

// Bits of the single word that are actual cells when dim < 6.
std::uint64_t valid_bits(std::size_t dim) {
  return dim >= 6 ? ~std::uint64_t{0}
                  : ((std::uint64_t{1} << (std::size_t{1} << dim)) - 1);
}

std::string join_coords(std::span<const Var> coords) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out << ',';
    out << coords[i];
  }
  out << ')';
  return out.str();
}

void check_coords(std::span<const Var> coords) {
  if (coords.empty()) throw PartitionError("partition needs at least one coordinate");
  if (coords.size() > kMaxCoords) {
    throw PartitionError("partition dimension " + std::to_string(coords.size()) +
                         " exceeds the cap of " + std::to_string(kMaxCoords));
  }
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) throw PartitionError("variable id 0 in coordinates " + join_coords(coords));
    if (i && coords[i - 1] >= coords[i]) {
      throw PartitionError("coordinates must be strictly ascending: " + join_coords(coords));
    }
  }
}

bool test_bit(const std::vector<std::uint64_t>& w, std::uint32_t cell) {
  return (w[cell >> 6] >> (cell & 63)) & 1u;
}

void set_bit(std::vector<std::uint64_t>& w, std::uint32_t cell) {
  w[cell >> 6] |= std::uint64_t{1} << (cell & 63);
}

// positions[j] = index within `space` of sub[j]; throws if sub is not a subset.
std::vector<std::size_t> positions_in(std::span<const Var> space,
                                      std::span<const Var> sub,
                                      const char* what) {
  std::vector<std::size_t> pos;
  pos.reserve(sub.size());
  for (Var v : sub) {
    auto it = std::lower_bound(space.begin(), space.end(), v);
    if (it == space.end() || *it != v) {
      throw PartitionError(std::string(what) + ": " + join_coords(sub) +
                           " is not a subset of " + join_coords(space));
    }
    pos.push_back(static_cast<std::size_t>(it - space.begin()));
  }
  return pos;
}

// Index of the restriction of `cell` to the coordinates at `pos`.
std::uint32_t restrict_cell(std::uint32_t cell, std::span<const std::size_t> pos) {
  std::uint32_t out = 0;
  for (std::size_t j = 0; j < pos.size(); ++j) {
    out |= ((cell >> pos[j]) & 1u) << j;
  }
  return out;
}

std::vector<Var> sorted_union(std::span<const Var> a, std::span<const Var> b) {
  std::vector<Var> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Partition::Partition(std::vector<Var> coords, std::vector<std::uint64_t> words,
                     std::nullptr_t)
    : coords_(std::move(coords)), words_(std::move(words)) {}

Partition::Partition(std::vector<Var> coords, std::vector<std::uint64_t> words)
    : coords_(std::move(coords)), words_(std::move(words)) {
  check_coords(coords_);
  if (words_.size() != word_count(dim())) {
    throw PartitionError("mask word count " + std::to_string(words_.size()) +
                         " does not match dimension " + std::to_string(dim()));
  }
  if (words_[0] & ~valid_bits(dim())) {
    throw PartitionError("mask has bits beyond the " + std::to_string(cell_count()) +
                         " cells of " + join_coords(coords_));
  }
}

Partition Partition::all_green(std::vector<Var> coords) {
  check_coords(coords);
  const std::size_t k = coords.size();
  return Partition(std::move(coords),
                   std::vector<std::uint64_t>(word_count(k), valid_bits(k)), nullptr);
}

Partition Partition::all_red(std::vector<Var> coords) {
  check_coords(coords);
  const std::size_t k = coords.size();
  return Partition(std::move(coords), std::vector<std::uint64_t>(word_count(k), 0),
                   nullptr);
}

Partition Partition::from_mask(std::vector<Var> coords, std::uint64_t mask) {
  if (coords.size() > 6) throw PartitionError("from_mask requires at most 6 coordinates");
  return Partition(std::move(coords), std::vector<std::uint64_t>{mask});
}

Partition Partition::from_green_cells(std::vector<Var> coords,
                                      std::span<const std::uint32_t> cells) {
  Partition out = all_red(std::move(coords));
  for (std::uint32_t c : cells) {
    if (c >= out.cell_count()) {
      throw PartitionError("cell index " + std::to_string(c) + " out of range");
    }
    set_bit(out.words_, c);
  }
  return out;
}

bool Partition::is_green(std::uint32_t cell) const {
  if (cell >= cell_count()) {
    throw PartitionError("cell index " + std::to_string(cell) + " out of range");
  }
  return test_bit(words_, cell);
}

std::size_t Partition::green_count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool Partition::all_red() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

std::uint64_t Partition::mask() const {
  if (dim() > 6) throw PartitionError("mask() requires at most 6 coordinates");
  return words_[0];
}

bool Partition::green_subset_of(const Partition& other) const {
  if (coords_ != other.coords_) {
    throw PartitionError("subset test on mismatched coordinates " + join_coords(coords_) +
                         " vs " + join_coords(other.coords_));
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

int Partition::position_of(Var var) const noexcept {
  auto it = std::lower_bound(coords_.begin(), coords_.end(), var);
  if (it == coords_.end() || *it != var) return -1;
  return static_cast<int>(it - coords_.begin());
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ',';
    out += 'u';
    out += std::to_string(coords_[i]);
  }
  out += ':';
  for (std::uint32_t c = 0; c < cell_count(); ++c) out += test_bit(words_, c) ? 'G' : 'R';
  return out;
}

std::string Partition::hex_mask() const {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  const std::size_t digits = std::max<std::size_t>(1, cell_count() / 4);
  std::string out = "0x";
  for (std::size_t d = digits; d-- > 0;) {
    const std::size_t bit = d * 4;
    out += kDigits[(words_[bit >> 6] >> (bit & 63)) & 0xF];
  }
  return out;
}

std::vector<Var> shared_coords(std::span<const Var> a, std::span<const Var> b) {
  std::vector<Var> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Partition cellwise(Op op, const Partition& p, const Partition& q) {
  if (p.coords() != q.coords()) {
    throw PartitionError("cellwise operands differ in coordinates: " + join_coords(p.coords()) +
                         " vs " + join_coords(q.coords()));
  }
  std::vector<std::uint64_t> words(p.words().size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    words[i] = op == Op::WS ? (p.words()[i] | q.words()[i]) : (p.words()[i] & q.words()[i]);
  }
  return Partition(p.coords(), std::move(words));
}

Partition cross(Op op, const Partition& p, const Partition& q) {
  if (!shared_coords(p.coords(), q.coords()).empty()) {
    throw PartitionError("cross operands overlap: " + join_coords(p.coords()) + " and " +
                         join_coords(q.coords()));
  }
  if (p.dim() + q.dim() > kMaxCoords) {
    throw PartitionError("cross product dimension " + std::to_string(p.dim() + q.dim()) +
                         " exceeds the cap of " + std::to_string(kMaxCoords));
  }
  return cellwise(op, lift(p, sorted_union(p.coords(), q.coords())),
                  lift(q, sorted_union(p.coords(), q.coords())));
}

Partition project(const Partition& p, std::span<const Var> target) {
  if (target.empty()) throw PartitionError("project: empty target");
  std::vector<Var> coords(target.begin(), target.end());
  check_coords(coords);
  const auto pos = positions_in(p.coords(), coords, "project");
  Partition out = Partition::all_red(coords);
  std::vector<std::uint64_t> words = out.words();
  for (std::uint32_t cell = 0; cell < p.cell_count(); ++cell) {
    if (test_bit(p.words(), cell)) set_bit(words, restrict_cell(cell, pos));
  }
  return Partition(std::move(coords), std::move(words));
}

Partition lift(const Partition& p, std::span<const Var> target) {
  std::vector<Var> coords(target.begin(), target.end());
  check_coords(coords);
  const auto pos = positions_in(coords, p.coords(), "lift");
  std::vector<std::uint64_t> words(word_count(coords.size()), 0);
  const std::uint32_t cells = std::uint32_t{1} << coords.size();
  for (std::uint32_t cell = 0; cell < cells; ++cell) {
    if (test_bit(p.words(), restrict_cell(cell, pos))) set_bit(words, cell);
  }
  return Partition(std::move(coords), std::move(words));
}

Partition impose(const Partition& p, const Partition& q) {
  return cellwise(Op::BS, p, lift(q, p.coords()));
}

std::pair<Partition, Partition> bc(const Partition& p, const Partition& q) {
  const auto shared = shared_coords(p.coords(), q.coords());
  if (shared.empty()) {
    throw PartitionError("bc operands share no coordinates: " + join_coords(p.coords()) +
                         " and " + join_coords(q.coords()));
  }
  const Partition meet = cellwise(Op::BS, project(p, shared), project(q, shared));
  return {impose(p, meet), impose(q, meet)};
}

Partition bc_uni(const Partition& p, const Partition& q) {
  const auto shared = shared_coords(p.coords(), q.coords());
  if (shared.empty()) {
    throw PartitionError("bc_uni operands share no coordinates: " + join_coords(p.coords()) +
                         " and " + join_coords(q.coords()));
  }
  return impose(p, project(q, shared));
}

Partition assemble(std::span<const Partition> parts, Op op) {
  std::vector<Var> coords;
  for (const auto& part : parts) coords = sorted_union(coords, part.coords());
  if (coords.empty()) throw PartitionError("assemble: no coordinates");
  if (coords.size() > kMaxCoords) {
    throw PartitionError("assemble: " + std::to_string(coords.size()) +
                         " coordinates exceed the cap of " + std::to_string(kMaxCoords));
  }
  Partition acc = op == Op::BS ? Partition::all_green(coords) : Partition::all_red(coords);
  for (const auto& part : parts) acc = cellwise(op, acc, lift(part, coords));
  return acc;
}

}  // namespace partsat
