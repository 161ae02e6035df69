#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace partsat {

using Var = std::uint32_t;

/// Largest number of coordinates a partition may span (2^16 cells).
inline constexpr std::size_t kMaxCoords = 16;

enum class Color : std::uint8_t { Red = 0, Green = 1 };

/// Cellwise combination operators. WS keeps GREEN (logical or), BS keeps RED
/// (logical and).
enum class Op : std::uint8_t { WS, BS };

Color ws(Color a, Color b) noexcept;
Color bs(Color a, Color b) noexcept;
Color apply(Op op, Color a, Color b) noexcept;

/// Raised for precondition violations on partition operations.
class PartitionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/*
 * A Z2 vector space over an ordered set of variables, with each point colored
 * GREEN (allowed) or RED (disallowed).
 *
 * Cell indexing: the coordinate at position i (coordinates sorted ascending)
 * contributes its value bit with weight 2^i, so position 0 is the least
 * significant bit of the cell index. F = 0, T = 1.
 */
class Partition {
 public:
  /// Builds from explicit GREEN bits packed into 64-bit words, LSB first.
  Partition(std::vector<Var> coords, std::vector<std::uint64_t> words);

  static Partition all_green(std::vector<Var> coords);
  static Partition all_red(std::vector<Var> coords);
  /// For k <= 6; bits above 2^k must be zero.
  static Partition from_mask(std::vector<Var> coords, std::uint64_t mask);
  static Partition from_green_cells(std::vector<Var> coords,
                                    std::span<const std::uint32_t> cells);

  const std::vector<Var>& coords() const noexcept { return coords_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  std::size_t cell_count() const noexcept { return std::size_t{1} << dim(); }

  bool is_green(std::uint32_t cell) const;
  Color color(std::uint32_t cell) const {
    return is_green(cell) ? Color::Green : Color::Red;
  }
  std::size_t green_count() const noexcept;
  bool all_red() const noexcept;

  /// Whole mask as one word; requires dim() <= 6.
  std::uint64_t mask() const;
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  /// Every GREEN cell of *this is GREEN in other (same coords required).
  bool green_subset_of(const Partition& other) const;

  /// Position of var in coords(), or -1.
  int position_of(Var var) const noexcept;

  /// `u1,u2,u3:RGGGGGGG`
  std::string to_string() const;
  /// Upper-case hex of the mask with a 0x prefix, most significant cell
  /// first, ceil(2^k / 4) digits.
  std::string hex_mask() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  Partition(std::vector<Var> coords, std::vector<std::uint64_t> words,
            std::nullptr_t);
  std::vector<Var> coords_;
  std::vector<std::uint64_t> words_;
};

Partition cellwise(Op op, const Partition& p, const Partition& q);
Partition cross(Op op, const Partition& p, const Partition& q);
Partition project(const Partition& p, std::span<const Var> target);
Partition lift(const Partition& p, std::span<const Var> target);
Partition impose(const Partition& p, const Partition& q);

/// Black-circle combination: both spaces are projected onto their shared
/// coordinates with WS, the projections are met with BS, and the meet is
/// imposed back onto each operand.
std::pair<Partition, Partition> bc(const Partition& p, const Partition& q);

/// One-way combination: q's projection onto the shared coordinates imposed on
/// p. q is left alone.
Partition bc_uni(const Partition& p, const Partition& q);

Partition assemble(std::span<const Partition> parts, Op op);

/// Sorted intersection of two ascending coordinate lists.
std::vector<Var> shared_coords(std::span<const Var> a, std::span<const Var> b);

}  // namespace partsat
