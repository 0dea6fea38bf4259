#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "generator.hpp"
#include "isaac.hpp"
#include "seed_key.hpp"
#include "xorshift.hpp"

namespace ciprng {

struct bench_entry {
  std::string name;
  std::size_t bytes = 0;
  double seconds = 0.0;
  double bytes_per_second = 0.0;
};

namespace detail {

template <class F>
bench_entry time_generator(std::string name, std::size_t bytes, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t sink = body();
  const auto t1 = std::chrono::steady_clock::now();
  // keep the accumulated value observable so the loop cannot be elided
  static volatile std::uint64_t guard;
  guard = sink;
  bench_entry e;
  e.name = std::move(name);
  e.bytes = bytes;
  e.seconds = std::chrono::duration<double>(t1 - t0).count();
  e.bytes_per_second = e.seconds > 0.0 ? static_cast<double>(bytes) / e.seconds : 0.0;
  return e;
}

} // namespace detail

// Times the composite generator against its two raw input generators, all
// seeded through the same key derivation. Each run produces at least
// n_bytes of output.
inline std::vector<bench_entry> throughput_bench(const seed_key& key,
                                                 const ci_params& params,
                                                 std::size_t n_bytes) {
  if (n_bytes < (1u << 20))
    throw std::invalid_argument("throughput_bench: need at least 1 MiB per run");
  params.validate();
  const derived_seeds d = derive_seeds(key, "stream");

  std::vector<bench_entry> out;

  {
    auto g = make_ci_prng(key, params);
    const std::size_t words =
        (n_bytes * 8 + params.n_cells - 1) / params.n_cells;
    const std::size_t bytes = words * params.n_cells / 8;
    out.push_back(detail::time_generator("ci(isaac,xorshift)", bytes, [&] {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < words; ++i)
        acc ^= g.next_word();
      return acc;
    }));
  }
  {
    isaac32 g(d.isaac_seed);
    const std::size_t words = (n_bytes + 3) / 4;
    out.push_back(detail::time_generator("isaac32", words * 4, [&] {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < words; ++i)
        acc ^= g.next();
      return acc;
    }));
  }
  {
    xorshift32 g(d.xorshift_seed);
    const std::size_t words = (n_bytes + 3) / 4;
    out.push_back(detail::time_generator("xorshift32", words * 4, [&] {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < words; ++i)
        acc ^= g.next();
      return acc;
    }));
  }
  return out;
}

} // namespace ciprng
