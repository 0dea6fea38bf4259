#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ciprng {

// A sequence of bit values, one per element (each 0 or 1).
// Kept as plain bytes so streams of 10^7+ bits stay cheap to slice and copy.
using bit_vector = std::vector<std::uint8_t>;

// Number of positions at which two equal-length bit sequences differ.
inline std::size_t hamming_distance(std::span<const std::uint8_t> a,
                                    std::span<const std::uint8_t> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d += static_cast<std::size_t>((a[i] ^ b[i]) & 1u);
  return d;
}

// Packs bits into bytes, first bit into the most significant position of the
// first byte. Requires a multiple of 8 bits.
inline std::vector<std::uint8_t> pack_bits_msb(std::span<const std::uint8_t> bits) {
  if (bits.size() % 8 != 0)
    throw std::invalid_argument("pack_bits_msb: bit count not a multiple of 8");
  std::vector<std::uint8_t> out(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    out[i >> 3] |= static_cast<std::uint8_t>((bits[i] & 1u) << (7 - (i & 7)));
  return out;
}

inline bit_vector unpack_bits_msb(std::span<const std::uint8_t> bytes,
                                  std::size_t n_bits) {
  if (n_bits > bytes.size() * 8)
    throw std::invalid_argument("unpack_bits_msb: not enough bytes");
  bit_vector out(n_bits);
  for (std::size_t i = 0; i < n_bits; ++i)
    out[i] = (bytes[i >> 3] >> (7 - (i & 7))) & 1u;
  return out;
}

// Splits a word into its n_bits binary digits, most significant first.
inline bit_vector word_to_bits(std::uint64_t value, unsigned n_bits) {
  if (n_bits == 0 || n_bits > 64)
    throw std::invalid_argument("word_to_bits: width must be 1..64");
  bit_vector out(n_bits);
  for (unsigned i = 0; i < n_bits; ++i)
    out[i] = static_cast<std::uint8_t>((value >> (n_bits - 1 - i)) & 1u);
  return out;
}

} // namespace ciprng
