#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bit_state.hpp"
#include "bits.hpp"
#include "seed_key.hpp"
#include "sources.hpp"
#include "xorshift.hpp"

namespace ciprng {

// How a raw 32-bit word from the strategy source becomes a cell index.
// modulo: plain remainder (bias-free whenever n_cells divides 2^32, which
// holds for every power of two, in particular the default 32).
// rejection: draw again until the word falls below the largest multiple of
// n_cells, then take the remainder; exactly uniform for any cell count.
enum class index_mode { modulo, rejection };

struct ci_params {
  std::uint32_t n_cells = 32;
  std::uint32_t round_base = 96; // per-round negation count is this or this+1
  bool emit_initial = true;      // emit x0 as the first output word
  index_mode mode = index_mode::modulo;
  bool allow_unsafe = false;     // lift the round_base >= 3*n_cells floor

  void validate() const {
    if (n_cells < 2 || n_cells > 64)
      throw std::invalid_argument("ci_params: n_cells must be in [2, 64]");
    if (round_base == 0)
      throw std::invalid_argument("ci_params: round_base must be positive");
    if (!allow_unsafe && round_base < 3 * n_cells)
      throw std::invalid_argument(
          "ci_params: round_base below 3*n_cells (pass allow_unsafe to override)");
  }
};

// The composite chaotic-iterations generator. Each round draws one word
// from the round source to choose the negation count m (round_base plus the
// word's parity), then draws m words from the strategy source, each
// selecting one cell to negate; the whole N-cell state is emitted as one
// output word per round.
template <word_source MSource, word_source SSource>
class basic_ci_prng {
public:
  basic_ci_prng(bit_state x0, MSource m_source, SSource s_source, ci_params p)
      : x_(std::move(x0)), m_(std::move(m_source)), s_(std::move(s_source)),
        p_(p), pending_initial_(p.emit_initial) {
    p_.validate();
    if (x_.size() != p_.n_cells)
      throw std::invalid_argument("basic_ci_prng: x0 width != n_cells");
  }

  // Advances to the next emitted state. When emit_initial is set the first
  // call returns x0 itself and consumes nothing from either source.
  const bit_state& next_round() {
    if (pending_initial_) {
      pending_initial_ = false;
      return x_;
    }
    const std::uint32_t m = (m_.next() % 2u) + p_.round_base;
    for (std::uint32_t k = 0; k < m; ++k)
      x_.flip(pick_index());
    ++rounds_;
    return x_;
  }

  std::uint64_t next_word() { return next_round().to_word(); }

  // Emits the next n bits of the stream: each round's state contributes its
  // n_cells bits, cell 0 first. Partial words are buffered, so consecutive
  // calls concatenate exactly.
  bit_vector next_bits(std::size_t n) {
    bit_vector out;
    out.reserve(n);
    while (out.size() < n) {
      if (avail_ == 0) {
        buf_ = next_word();
        avail_ = p_.n_cells;
      }
      out.push_back(static_cast<std::uint8_t>((buf_ >> (avail_ - 1)) & 1u));
      --avail_;
    }
    return out;
  }

  const bit_state& state() const { return x_; }
  const ci_params& params() const { return p_; }
  std::uint64_t rounds() const { return rounds_; }

private:
  std::uint32_t pick_index() {
    std::uint32_t w = s_.next();
    if (p_.mode == index_mode::rejection) {
      const std::uint64_t limit =
          (0x100000000ull / p_.n_cells) * p_.n_cells;
      while (w >= limit)
        w = s_.next();
    }
    return w % p_.n_cells;
  }

  bit_state x_;
  MSource m_;
  SSource s_;
  ci_params p_;
  bool pending_initial_;
  std::uint64_t rounds_ = 0;
  std::uint64_t buf_ = 0;
  std::uint32_t avail_ = 0;
};

using ci_prng = basic_ci_prng<isaac32, xorshift32>;
using injected_ci_prng = basic_ci_prng<fixed_words, fixed_words>;

// Builds the keyed generator: ISAAC supplies the negation counts, xorshift
// the cell choices, both seeded from the full key through the domain-tagged
// derivation.
inline ci_prng make_ci_prng(const seed_key& key, const ci_params& p,
                            std::string_view domain_tag = "stream") {
  p.validate();
  if (key.x0.size() != p.n_cells)
    throw std::invalid_argument("make_ci_prng: x0 width != n_cells");
  const derived_seeds d = derive_seeds(key, domain_tag);
  return ci_prng(bit_state::from_bits(key.x0), isaac32(d.isaac_seed),
                 xorshift32(d.xorshift_seed), p);
}

// The 5-cell worked example with scripted inputs: x0 = 20, round base 4,
// emitted words 20, 30, 31, 19.
inline injected_ci_prng make_reference_fixture() {
  ci_params p;
  p.n_cells = 5;
  p.round_base = 4;
  p.allow_unsafe = true;
  return injected_ci_prng(
      bit_state::from_word(20, 5), fixed_words({0, 1, 0}),
      fixed_words({1, 3, 1, 1, 4, 0, 0, 4, 4, 2, 1, 2, 2}), p);
}

// Key-value record describing a keyed stream precisely enough to identify
// the construction and reproduce it (together with the key itself).
inline std::vector<std::pair<std::string, std::string>>
describe_stream(const seed_key& key, const ci_params& p,
                std::string_view domain_tag = "stream") {
  return {
      {"generator", "chaotic-iterations"},
      {"update", "vectorial-negation"},
      {"round-source", "isaac32"},
      {"strategy-source", "xorshift32(13,17,5)"},
      {"seed-derivation", "kdf1"},
      {"domain-tag", std::string(domain_tag)},
      {"n-cells", std::to_string(p.n_cells)},
      {"round-base", std::to_string(p.round_base)},
      {"emit-initial", p.emit_initial ? "true" : "false"},
      {"index-mode", p.mode == index_mode::modulo ? "modulo" : "rejection"},
      {"key-fingerprint", key_fingerprint(key)},
  };
}

} // namespace ciprng
