#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ws1s {

/// One concrete letter: a bit per track, in ascending track order.
using Symbol = std::vector<std::uint8_t>;
using Word = std::vector<Symbol>;

/// Lexicographic comparison of words (shorter first is not implied).
bool symbol_less(const Symbol& a, const Symbol& b);

/// A set of symbols given by a per-track pattern over {0, 1, X}.
class Cube {
 public:
  static constexpr char kZero = '0';
  static constexpr char kOne = '1';
  static constexpr char kAny = 'X';

  Cube() = default;
  /// The all-don't-care cube of the given width.
  explicit Cube(std::size_t width) : bits_(width, kAny) {}

  /// Throws Error(kInvalidArgument) on characters outside {0,1,X}.
  static Cube parse(std::string_view pattern);
  static Cube of(const Symbol& symbol);

  std::size_t width() const { return bits_.size(); }
  char operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, char value) { bits_[i] = value; }
  const std::string& str() const { return bits_; }

  bool matches(const Symbol& symbol) const;
  bool intersects(const Cube& other) const;
  std::optional<Cube> intersect(const Cube& other) const;
  /// True when the all-zero symbol belongs to the cube.
  bool admits_zero() const;
  bool is_universal() const;
  /// Least member under symbol_less: every X read as 0.
  Symbol min_symbol() const;
  std::size_t count_free() const;

  Cube without(std::size_t position) const;
  /// Places bit i at target[i] in a cube of new_width; other positions are X.
  Cube widen(std::span<const std::size_t> target, std::size_t new_width) const;

  friend bool operator==(const Cube&, const Cube&) = default;

 private:
  explicit Cube(std::string bits) : bits_(std::move(bits)) {}

  std::string bits_;
};

/// Orders disjoint cubes by their least members; matches the witness order.
bool cube_min_less(const Cube& a, const Cube& b);

}  // namespace ws1s
