#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bits.hpp"
#include "isaac.hpp"

namespace ciprng {

// Full key material for a keyed stream: the initial cell values x0, a byte
// key for the ISAAC input generator, and a seed for the xorshift input
// generator.
struct seed_key {
  bit_vector x0;
  std::vector<std::uint8_t> isaac_key;
  std::uint32_t xorshift_seed = 1;
};

struct derived_seeds {
  isaac32::seed_array isaac_seed;
  std::uint32_t xorshift_seed;
};

namespace detail {

// Serialises the whole key under a domain tag. Both input-generator seeds
// are derived from this, so any single-bit change anywhere in the key (x0
// included) reaches both internal streams; seeding the input generators
// from their own fields alone would leave an x0 flip propagating to exactly
// one cell forever, the state update being xor-linear.
inline std::vector<std::uint8_t> key_material(const seed_key& key,
                                              std::string_view tag) {
  std::vector<std::uint8_t> m;
  m.reserve(tag.size() + 1 + key.x0.size() / 8 + key.isaac_key.size() + 13);
  for (char c : tag)
    m.push_back(static_cast<std::uint8_t>(c));
  m.push_back(0);
  std::vector<std::uint8_t> packed((key.x0.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < key.x0.size(); ++i)
    packed[i >> 3] |= static_cast<std::uint8_t>((key.x0[i] & 1u) << (7 - (i & 7)));
  m.insert(m.end(), packed.begin(), packed.end());
  const auto push_u32 = [&m](std::uint32_t v) {
    m.push_back(static_cast<std::uint8_t>(v));
    m.push_back(static_cast<std::uint8_t>(v >> 8));
    m.push_back(static_cast<std::uint8_t>(v >> 16));
    m.push_back(static_cast<std::uint8_t>(v >> 24));
  };
  push_u32(static_cast<std::uint32_t>(key.x0.size()));
  push_u32(key.xorshift_seed);
  m.insert(m.end(), key.isaac_key.begin(), key.isaac_key.end());
  push_u32(static_cast<std::uint32_t>(key.isaac_key.size()));
  return m;
}

inline std::uint32_t avalanche32(std::uint32_t h) {
  h ^= h >> 16;
  h *= 0x7feb352du;
  h ^= h >> 15;
  h *= 0x846ca68bu;
  h ^= h >> 16;
  return h;
}

} // namespace detail

// Derives both input-generator seeds from the key under a domain tag
// ("stream" for the main generator; the watermark operations use their own
// tags so their internal streams never collide with the export stream).
inline derived_seeds derive_seeds(const seed_key& key, std::string_view tag) {
  const auto m = detail::key_material(key, tag);

  derived_seeds d{};
  for (std::size_t i = 0; i < m.size(); ++i)
    d.isaac_seed[(i / 4) % 256] ^= static_cast<std::uint32_t>(m[i]) << (8 * (i % 4));

  std::uint32_t h = 0x9e3779b9u;
  for (std::uint8_t b : m)
    h = (h ^ b) * 0x01000193u;
  h = detail::avalanche32(h);
  if (h == 0)
    h = 0x9e3779b9u;
  d.xorshift_seed = h;
  return d;
}

// Short stable identifier for a key, safe to echo in reports.
inline std::string key_fingerprint(const seed_key& key) {
  const auto m = detail::key_material(key, "fingerprint");
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint8_t b : m) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

} // namespace ciprng
