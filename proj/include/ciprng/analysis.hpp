#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "bits.hpp"
#include "generator.hpp"
#include "seed_key.hpp"

namespace ciprng {

// Normalized Hamming distance between two equal-length streams; the
// sensitivity figure of merit. Near 0.5 means the streams decorrelate like
// independent coin flips.
struct variance_ratio_result {
  std::size_t n = 0;
  std::size_t hamming = 0;
  double ratio = 0.0;
};

inline variance_ratio_result variance_ratio(std::span<const std::uint8_t> a,
                                            std::span<const std::uint8_t> b) {
  if (a.empty() || a.size() != b.size())
    throw std::invalid_argument("variance_ratio: need equal nonempty streams");
  variance_ratio_result r;
  r.n = a.size();
  r.hamming = hamming_distance(a, b);
  r.ratio = static_cast<double>(r.hamming) / static_cast<double>(r.n);
  return r;
}

struct sensitivity_pair {
  std::uint32_t flipped_bit = 0;
  variance_ratio_result result;
};

struct sensitivity_config {
  std::size_t pairs = 100;
  std::size_t bits_per_stream = 100000;
  std::uint64_t protocol_seed = 1;
  ci_params params;
};

// Key-sensitivity experiment: for each pair, draw a fresh random key, flip
// one uniformly chosen bit of its x0, and measure the variance ratio
// between the two resulting streams. Fully deterministic given the
// protocol seed.
inline std::vector<sensitivity_pair>
key_sensitivity(const sensitivity_config& cfg) {
  if (cfg.pairs == 0)
    throw std::invalid_argument("key_sensitivity: need at least one pair");
  cfg.params.validate();
  std::mt19937_64 rng(cfg.protocol_seed);
  std::uniform_int_distribution<std::uint32_t> cell_dist(0, cfg.params.n_cells - 1);

  std::vector<sensitivity_pair> out;
  out.reserve(cfg.pairs);
  for (std::size_t i = 0; i < cfg.pairs; ++i) {
    seed_key base;
    base.x0.resize(cfg.params.n_cells);
    for (auto& b : base.x0)
      b = static_cast<std::uint8_t>(rng() & 1u);
    base.isaac_key.resize(16);
    for (auto& b : base.isaac_key)
      b = static_cast<std::uint8_t>(rng());
    base.xorshift_seed = static_cast<std::uint32_t>(rng());

    seed_key flipped = base;
    const std::uint32_t bit = cell_dist(rng);
    flipped.x0[bit] ^= 1u;

    auto ga = make_ci_prng(base, cfg.params);
    auto gb = make_ci_prng(flipped, cfg.params);
    sensitivity_pair p;
    p.flipped_bit = bit;
    p.result = variance_ratio(ga.next_bits(cfg.bits_per_stream),
                              gb.next_bits(cfg.bits_per_stream));
    out.push_back(p);
  }
  return out;
}

inline double sensitivity_mean(std::span<const sensitivity_pair> pairs) {
  if (pairs.empty())
    throw std::invalid_argument("sensitivity_mean: empty");
  double s = 0.0;
  for (const auto& p : pairs)
    s += p.result.ratio;
  return s / static_cast<double>(pairs.size());
}

// Maps the word sequence into the unit cube as overlapping sliding-window
// triples, for (x, y, z) scatter inspection of the output distribution.
inline std::vector<std::array<double, 3>>
point_cloud(std::span<const std::uint64_t> words, unsigned word_width) {
  if (word_width == 0 || word_width > 64)
    throw std::invalid_argument("point_cloud: word width must be 1..64");
  if (words.size() < 3)
    throw std::invalid_argument("point_cloud: need at least three words");
  if (word_width < 64)
    for (std::uint64_t w : words)
      if (w >= (std::uint64_t{1} << word_width))
        throw std::invalid_argument("point_cloud: word exceeds the stated width");
  // Only the top 53 bits reach the mantissa; dropping the rest keeps the
  // division exact and every coordinate strictly below 1.
  const unsigned eff = word_width > 53 ? 53u : word_width;
  const unsigned drop = word_width - eff;
  const double inv = std::ldexp(1.0, -static_cast<int>(eff));
  const auto unit = [&](std::uint64_t w) {
    return static_cast<double>(w >> drop) * inv;
  };
  std::vector<std::array<double, 3>> pts;
  pts.reserve(words.size() - 2);
  for (std::size_t i = 0; i + 3 <= words.size(); ++i)
    pts.push_back({unit(words[i]), unit(words[i + 1]), unit(words[i + 2])});
  return pts;
}

} // namespace ciprng
