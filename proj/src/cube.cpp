#include "ws1s/cube.hpp"

#include <algorithm>

#include "ws1s/error.hpp"

namespace ws1s {

bool symbol_less(const Symbol& a, const Symbol& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Cube Cube::parse(std::string_view pattern) {
  for (char c : pattern) {
    if (c != kZero && c != kOne && c != kAny) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cube pattern '" + std::string(pattern) +
                      "' may only contain 0, 1 and X");
    }
  }
  return Cube(std::string(pattern));
}

Cube Cube::of(const Symbol& symbol) {
  std::string bits(symbol.size(), kZero);
  for (std::size_t i = 0; i < symbol.size(); ++i) {
    if (symbol[i]) bits[i] = kOne;
  }
  return Cube(std::move(bits));
}

bool Cube::matches(const Symbol& symbol) const {
  if (symbol.size() != bits_.size()) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] == kAny) continue;
    if ((bits_[i] == kOne) != (symbol[i] != 0)) return false;
  }
  return true;
}

bool Cube::intersects(const Cube& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    const char a = bits_[i];
    const char b = other.bits_[i];
    if (a != kAny && b != kAny && a != b) return false;
  }
  return true;
}

std::optional<Cube> Cube::intersect(const Cube& other) const {
  std::string out = bits_;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const char b = other.bits_[i];
    if (b == kAny) continue;
    if (out[i] == kAny) {
      out[i] = b;
    } else if (out[i] != b) {
      return std::nullopt;
    }
  }
  return Cube(std::move(out));
}

bool Cube::admits_zero() const {
  return bits_.find(kOne) == std::string::npos;
}

bool Cube::is_universal() const {
  return std::all_of(bits_.begin(), bits_.end(),
                     [](char c) { return c == kAny; });
}

Symbol Cube::min_symbol() const {
  Symbol out(bits_.size(), 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = bits_[i] == kOne;
  return out;
}

std::size_t Cube::count_free() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), kAny));
}

Cube Cube::without(std::size_t position) const {
  std::string out = bits_;
  out.erase(position, 1);
  return Cube(std::move(out));
}

Cube Cube::widen(std::span<const std::size_t> target,
                 std::size_t new_width) const {
  std::string out(new_width, kAny);
  for (std::size_t i = 0; i < bits_.size(); ++i) out[target[i]] = bits_[i];
  return Cube(std::move(out));
}

bool cube_min_less(const Cube& a, const Cube& b) {
  const std::string& x = a.str();
  const std::string& y = b.str();
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    const bool bx = x[i] == Cube::kOne;
    const bool by = y[i] == Cube::kOne;
    if (bx != by) return by;
  }
  return x.size() < y.size();
}

}  // namespace ws1s
