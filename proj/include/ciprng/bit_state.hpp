#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bits.hpp"

namespace ciprng {

// State of a chaotic-iterations system: N boolean cells, indexed 0..N-1.
// One iteration step negates exactly one cell. Cell 0 is the most
// significant bit of the packed-word view.
class bit_state {
public:
  bit_state() = default;

  explicit bit_state(std::uint32_t n_cells, bool fill = false) : n_(n_cells) {
    if (n_cells == 0)
      throw std::invalid_argument("bit_state: zero cells");
    blocks_.resize((n_ + 63u) / 64u, 0);
    if (fill) {
      for (std::uint32_t i = 0; i < n_; ++i)
        set(i, true);
    }
  }

  // Interprets the low n_cells bits of value as the state, most significant
  // bit first: from_word(0b101, 3) has cells (1,0,1).
  static bit_state from_word(std::uint64_t value, std::uint32_t n_cells) {
    if (n_cells == 0 || n_cells > 64)
      throw std::invalid_argument("bit_state::from_word: width must be 1..64");
    if (n_cells < 64 && (value >> n_cells) != 0)
      throw std::invalid_argument("bit_state::from_word: value out of range");
    bit_state x(n_cells);
    for (std::uint32_t i = 0; i < n_cells; ++i)
      x.set(i, (value >> (n_cells - 1 - i)) & 1u);
    return x;
  }

  static bit_state from_bits(std::span<const std::uint8_t> bits) {
    if (bits.empty())
      throw std::invalid_argument("bit_state::from_bits: empty");
    bit_state x(static_cast<std::uint32_t>(bits.size()));
    for (std::uint32_t i = 0; i < x.n_; ++i)
      x.set(i, bits[i] & 1u);
    return x;
  }

  std::uint32_t size() const { return n_; }

  bool get(std::uint32_t i) const {
    check(i);
    return (blocks_[i >> 6] >> (i & 63u)) & 1u;
  }

  void set(std::uint32_t i, bool v) {
    check(i);
    const std::uint64_t m = std::uint64_t{1} << (i & 63u);
    if (v)
      blocks_[i >> 6] |= m;
    else
      blocks_[i >> 6] &= ~m;
  }

  void flip(std::uint32_t i) {
    check(i);
    blocks_[i >> 6] ^= std::uint64_t{1} << (i & 63u);
  }

  // Packed-word view, cell 0 in the most significant position. Only defined
  // for states that fit in one word.
  std::uint64_t to_word() const {
    if (n_ == 0 || n_ > 64)
      throw std::logic_error("bit_state::to_word: state wider than 64 cells");
    return reverse64(blocks_[0]) >> (64u - n_);
  }

  bit_vector to_bits() const {
    bit_vector out(n_);
    for (std::uint32_t i = 0; i < n_; ++i)
      out[i] = get(i);
    return out;
  }

  friend bool operator==(const bit_state& a, const bit_state& b) {
    return a.n_ == b.n_ && a.blocks_ == b.blocks_;
  }

private:
  void check(std::uint32_t i) const {
    if (i >= n_)
      throw std::out_of_range("bit_state: cell index out of range");
  }

  static std::uint64_t reverse64(std::uint64_t v) {
    v = ((v >> 1) & 0x5555555555555555ull) | ((v & 0x5555555555555555ull) << 1);
    v = ((v >> 2) & 0x3333333333333333ull) | ((v & 0x3333333333333333ull) << 2);
    v = ((v >> 4) & 0x0F0F0F0F0F0F0F0Full) | ((v & 0x0F0F0F0F0F0F0F0Full) << 4);
    v = ((v >> 8) & 0x00FF00FF00FF00FFull) | ((v & 0x00FF00FF00FF00FFull) << 8);
    v = ((v >> 16) & 0x0000FFFF0000FFFFull) | ((v & 0x0000FFFF0000FFFFull) << 16);
    return (v >> 32) | (v << 32);
  }

  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> blocks_;
};

// One chaotic iteration with the vectorial negation update: the chosen cell
// is negated, every other cell is left alone.
inline bit_state ci_step(bit_state x, std::uint32_t cell) {
  x.flip(cell);
  return x;
}

// Runs the iterations for a whole strategy sequence.
inline bit_state ci_run(bit_state x, std::span<const std::uint32_t> strategy) {
  for (std::uint32_t cell : strategy)
    x.flip(cell);
  return x;
}

inline std::size_t hamming_distance(const bit_state& a, const bit_state& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming_distance: size mismatch");
  std::size_t d = 0;
  for (std::uint32_t i = 0; i < a.size(); ++i)
    d += a.get(i) != b.get(i);
  return d;
}

} // namespace ciprng
