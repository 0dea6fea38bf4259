#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace ciprng {

// Bob Jenkins' ISAAC generator, 32-bit flavour (the algorithm is public
// domain). 256-word internal state; each shuffle produces a batch of 256
// output words which are consumed in increasing index order.
//
// Seeding follows the reference two-pass initialisation: the seed array is
// mixed into the state through the golden-ratio constants, then one result
// batch is computed and discarded as part of initialisation, so the first
// word drawn from a zero-seeded instance equals the first word of the
// reference output stream.
class isaac32 {
public:
  using seed_array = std::array<std::uint32_t, 256>;

  isaac32() : isaac32(seed_array{}) {}

  explicit isaac32(const seed_array& seed) {
    init(seed);
  }

  // Packs an arbitrary-length byte key little-endian into the seed array,
  // zero-padded; keys longer than 1024 bytes fold back with xor.
  static isaac32 from_key_bytes(std::span<const std::uint8_t> key) {
    seed_array seed{};
    for (std::size_t i = 0; i < key.size(); ++i)
      seed[(i / 4) % 256] ^= static_cast<std::uint32_t>(key[i]) << (8 * (i % 4));
    return isaac32(seed);
  }

  std::uint32_t next() {
    if (idx_ == 256) {
      shuffle();
      idx_ = 0;
    }
    return out_[idx_++];
  }

  // Number of 256-word batches computed so far (including the one discarded
  // during initialisation).
  std::uint64_t shuffles() const { return shuffles_; }

private:
  void init(const seed_array& seed) {
    std::uint32_t a, b, c, d, e, f, g, h;
    a = b = c = d = e = f = g = h = 0x9e3779b9u;
    for (int i = 0; i < 4; ++i)
      mix(a, b, c, d, e, f, g, h);
    for (int i = 0; i < 256; i += 8) {
      a += seed[i];     b += seed[i + 1]; c += seed[i + 2]; d += seed[i + 3];
      e += seed[i + 4]; f += seed[i + 5]; g += seed[i + 6]; h += seed[i + 7];
      mix(a, b, c, d, e, f, g, h);
      mem_[i] = a;     mem_[i + 1] = b; mem_[i + 2] = c; mem_[i + 3] = d;
      mem_[i + 4] = e; mem_[i + 5] = f; mem_[i + 6] = g; mem_[i + 7] = h;
    }
    for (int i = 0; i < 256; i += 8) {
      a += mem_[i];     b += mem_[i + 1]; c += mem_[i + 2]; d += mem_[i + 3];
      e += mem_[i + 4]; f += mem_[i + 5]; g += mem_[i + 6]; h += mem_[i + 7];
      mix(a, b, c, d, e, f, g, h);
      mem_[i] = a;     mem_[i + 1] = b; mem_[i + 2] = c; mem_[i + 3] = d;
      mem_[i + 4] = e; mem_[i + 5] = f; mem_[i + 6] = g; mem_[i + 7] = h;
    }
    shuffle(); // batch internal to initialisation, never emitted
    shuffle();
    idx_ = 0;
  }

  static void mix(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c,
                  std::uint32_t& d, std::uint32_t& e, std::uint32_t& f,
                  std::uint32_t& g, std::uint32_t& h) {
    a ^= b << 11; d += a; b += c;
    b ^= c >> 2;  e += b; c += d;
    c ^= d << 8;  f += c; d += e;
    d ^= e >> 16; g += d; e += f;
    e ^= f << 10; h += e; f += g;
    f ^= g >> 4;  a += f; g += h;
    g ^= h << 8;  b += g; h += a;
    h ^= a >> 9;  c += h; a += b;
  }

  void shuffle() {
    cc_ += 1;
    bb_ += cc_;
    std::uint32_t a = aa_, b = bb_;
    for (std::uint32_t i = 0; i < 256; ++i) {
      const std::uint32_t x = mem_[i];
      switch (i & 3u) {
        case 0: a ^= a << 13; break;
        case 1: a ^= a >> 6; break;
        case 2: a ^= a << 2; break;
        case 3: a ^= a >> 16; break;
      }
      a += mem_[(i + 128u) & 255u];
      const std::uint32_t y = mem_[(x >> 2) & 255u] + a + b;
      mem_[i] = y;
      b = mem_[(y >> 10) & 255u] + x;
      out_[i] = b;
    }
    aa_ = a;
    bb_ = b;
    ++shuffles_;
  }

  std::array<std::uint32_t, 256> mem_{};
  std::array<std::uint32_t, 256> out_{};
  std::uint32_t aa_ = 0, bb_ = 0, cc_ = 0;
  std::uint32_t idx_ = 0;
  std::uint64_t shuffles_ = 0;
};

} // namespace ciprng
