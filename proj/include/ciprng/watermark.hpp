#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bit_state.hpp"
#include "bits.hpp"
#include "generator.hpp"
#include "image.hpp"
#include "seed_key.hpp"

namespace ciprng {

inline constexpr std::size_t default_wm_iterations = 5000;

namespace detail {

// Keyed word stream for watermark internals. Domain tags keep the
// encryption strategy, the embedding positions and any exported stream
// under the same key mutually independent.
inline ci_prng make_wm_stream(const seed_key& key, const char* tag) {
  ci_params p;
  p.n_cells = static_cast<std::uint32_t>(key.x0.size());
  p.round_base = 3 * p.n_cells;
  return make_ci_prng(key, p, tag);
}

} // namespace detail

// Encrypts (or, run again, decrypts) a watermark by chaotic iterations over
// its own cells: each iteration negates the keyed-stream-chosen cell. The
// transform is an involution, so encryption and decryption are the same
// operation. Zero iterations is the identity.
inline bit_vector encrypt_watermark(const seed_key& key, const bit_vector& wm_bits,
                                    std::size_t iterations = default_wm_iterations) {
  if (wm_bits.empty())
    throw std::invalid_argument("encrypt_watermark: empty watermark");
  auto strategy = detail::make_wm_stream(key, "wm-encrypt");
  bit_state x = bit_state::from_bits(wm_bits);
  const std::uint64_t cells = wm_bits.size();
  for (std::size_t i = 0; i < iterations; ++i)
    x.flip(static_cast<std::uint32_t>(strategy.next_word() % cells));
  return x.to_bits();
}

// The embedding position recurrence: u(0) = s(0) mod M and
// u(n+1) = (s(n+1) + 2 u(n) + n) mod M, with s drawn from the keyed
// "wm-embed" stream. Raw sequence, duplicates included.
template <word_source WS>
std::vector<std::uint64_t> u_sequence_from(WS& src, std::size_t count,
                                           std::uint64_t modulus) {
  if (modulus == 0)
    throw std::invalid_argument("u_sequence: zero modulus");
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::uint64_t u = 0;
  for (std::size_t n = 0; n < count; ++n) {
    const std::uint64_t s = src.next();
    u = (n == 0) ? s % modulus : (s + 2 * u + (n - 1)) % modulus;
    out.push_back(u);
  }
  return out;
}

inline std::vector<std::uint64_t> u_sequence(const seed_key& key,
                                             std::size_t count,
                                             std::uint64_t modulus) {
  auto src = detail::make_wm_stream(key, "wm-embed");
  struct word_adapter {
    ci_prng* g;
    std::uint32_t next() { return static_cast<std::uint32_t>(g->next_word()); }
  } adapter{&src};
  return u_sequence_from(adapter, count, modulus);
}

namespace detail {

// First-visit filter over the position recurrence: duplicate positions are
// skipped by drawing further terms, so exactly `count` distinct carrier
// positions come back, in recurrence order.
template <word_source WS>
std::vector<std::uint64_t> unique_positions_from(WS& src, std::size_t count,
                                                 std::uint64_t modulus) {
  if (count > modulus)
    throw std::invalid_argument("unique_positions: more positions than carrier slots");
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::vector<bool> used(modulus, false);
  std::uint64_t u = 0;
  std::size_t n = 0;
  const std::size_t draw_cap = 1000000 + 64 * static_cast<std::size_t>(modulus);
  while (out.size() < count) {
    if (n >= draw_cap)
      throw std::runtime_error("unique_positions: position sequence failed to cover the watermark");
    const std::uint64_t s = src.next();
    u = (n == 0) ? s % modulus : (s + 2 * u + (n - 1)) % modulus;
    ++n;
    if (!used[u]) {
      used[u] = true;
      out.push_back(u);
    }
  }
  return out;
}

inline std::vector<std::uint64_t> carrier_positions(const seed_key& key,
                                                    std::size_t count,
                                                    std::uint64_t modulus) {
  auto src = make_wm_stream(key, "wm-embed");
  struct word_adapter {
    ci_prng* g;
    std::uint32_t next() { return static_cast<std::uint32_t>(g->next_word()); }
  } adapter{&src};
  return unique_positions_from(adapter, count, modulus);
}

} // namespace detail

// The carrier's low plane: the three low bits of every pixel concatenated
// row-major, most significant of the three first, so plane position p lives
// in pixel p / 3 at bit 2 - p % 3.
inline bit_vector lsb_plane(const gray_image& img) {
  bit_vector bits;
  bits.reserve(3 * img.pixels.size());
  for (std::uint8_t p : img.pixels) {
    bits.push_back((p >> 2) & 1u);
    bits.push_back((p >> 1) & 1u);
    bits.push_back(p & 1u);
  }
  return bits;
}

// Writes a low plane back; the five high bits of every pixel are kept.
inline gray_image set_lsb_plane(gray_image img, const bit_vector& bits) {
  if (bits.size() != 3 * img.pixels.size())
    throw std::invalid_argument("set_lsb_plane: plane length != 3 * pixel count");
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const std::uint8_t low =
        static_cast<std::uint8_t>(((bits[3 * i] & 1u) << 2) |
                                  ((bits[3 * i + 1] & 1u) << 1) |
                                  (bits[3 * i + 2] & 1u));
    img.pixels[i] = static_cast<std::uint8_t>((img.pixels[i] & 0xF8u) | low);
  }
  return img;
}

// Embeds an encrypted watermark into the carrier's low plane by bit
// substitution at the keyed positions. The per-pixel change never exceeds
// 7, so the worst-case PSNR stays above 31.2 dB.
inline gray_image embed_watermark(const seed_key& key, gray_image carrier,
                                  const bit_image& wm,
                                  std::size_t iterations = default_wm_iterations) {
  const std::size_t n_bits = wm.width * wm.height;
  const std::uint64_t capacity = 3ull * carrier.width * carrier.height;
  if (n_bits > capacity)
    throw std::invalid_argument("embed_watermark: carrier too small for watermark");
  const bit_vector enc = encrypt_watermark(key, wm.bits, iterations);
  const auto positions = detail::carrier_positions(key, n_bits, capacity);
  bit_vector plane = lsb_plane(carrier);
  for (std::size_t k = 0; k < n_bits; ++k)
    plane[static_cast<std::size_t>(positions[k])] = enc[k] & 1u;
  return set_lsb_plane(std::move(carrier), plane);
}

// Blind extraction: rebuilds the position sequence from the key alone,
// reads the substituted plane bits back and decrypts them.
inline bit_image extract_watermark(const seed_key& key, const gray_image& marked,
                                   std::size_t wm_width, std::size_t wm_height,
                                   std::size_t iterations = default_wm_iterations) {
  if (wm_width == 0 || wm_height == 0)
    throw std::invalid_argument("extract_watermark: zero watermark dimension");
  const std::size_t n_bits = wm_width * wm_height;
  const std::uint64_t capacity = 3ull * marked.width * marked.height;
  if (n_bits > capacity)
    throw std::invalid_argument("extract_watermark: carrier too small for watermark");
  const auto positions = detail::carrier_positions(key, n_bits, capacity);
  const bit_vector plane = lsb_plane(marked);
  bit_vector enc(n_bits);
  for (std::size_t k = 0; k < n_bits; ++k)
    enc[k] = plane[static_cast<std::size_t>(positions[k])];
  bit_image wm(wm_width, wm_height);
  wm.bits = encrypt_watermark(key, enc, iterations);
  return wm;
}

// Fraction of differing bits between two same-size bilevel images.
inline double bit_error_rate(const bit_image& a, const bit_image& b) {
  if (a.width != b.width || a.height != b.height)
    throw std::invalid_argument("bit_error_rate: image dimensions differ");
  return static_cast<double>(hamming_distance(a.bits, b.bits)) /
         static_cast<double>(a.bits.size());
}

} // namespace ciprng
