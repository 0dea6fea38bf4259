// Acceptance gate. Each criterion prints exactly one PASS/FAIL line with
// its measured runtime against a fixed budget; the exit status is the
// number of failing criteria. Pass criterion numbers as arguments to run a
// subset, e.g. `ciprng_acceptance 4 5`.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <exception>
#include <random>
#include <string>
#include <vector>

#include <ciprng/ciprng.hpp>

#include "../oracle/composite_reference.hpp"
#include "../oracle/isaac_expected.hpp"
#include "../oracle/isaac_reference.hpp"

namespace {

struct outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

ciprng::seed_key fixed_key() {
  ciprng::seed_key k;
  k.x0 = ciprng::word_to_bits(0xC001D00Du, 32);
  const char* s = "battery-preverify-key";
  k.isaac_key.assign(s, s + std::strlen(s));
  k.xorshift_seed = 0x1234ABCDu;
  return k;
}

ciprng::seed_key random_key(std::mt19937_64& rng, std::size_t n_cells = 32) {
  ciprng::seed_key k;
  k.x0.resize(n_cells);
  for (auto& b : k.x0)
    b = static_cast<std::uint8_t>(rng() & 1u);
  k.isaac_key.resize(16);
  for (auto& b : k.isaac_key)
    b = static_cast<std::uint8_t>(rng());
  do {
    k.xorshift_seed = static_cast<std::uint32_t>(rng());
  } while (k.xorshift_seed == 0);
  return k;
}

// 1. Worked 5-cell example: scripted sources, exact words and bits.
outcome c1_worked_example() {
  auto words_gen = ciprng::make_reference_fixture();
  const std::array<std::uint64_t, 4> want_words{20, 30, 31, 19};
  for (std::size_t i = 0; i < want_words.size(); ++i)
    if (words_gen.next_word() != want_words[i])
      return {false, fmt("word %zu mismatch", i)};

  auto bits_gen = ciprng::make_reference_fixture();
  std::string bits;
  for (std::uint8_t b : bits_gen.next_bits(20))
    bits += static_cast<char>('0' + b);
  if (bits != "10100111101111110011")
    return {false, "bit stream mismatch: " + bits};
  return {true, "words 20,30,31,19 and 20-bit stream exact"};
}

// 2. ISAAC zero-seed output vs the frozen reference words and an
// independently written transliteration of the reference code.
outcome c2_isaac_oracle() {
  ciprng::isaac32 lib;
  oracle::isaac_reference ref(std::array<std::uint32_t, 256>{});
  for (std::size_t i = 0; i < isaac_zero_seed_expected.size(); ++i) {
    const std::uint32_t w = lib.next();
    if (w != isaac_zero_seed_expected[i])
      return {false, fmt("word %zu != reference file", i)};
    if (w != ref.next())
      return {false, fmt("word %zu != transliteration", i)};
  }
  return {true, "512 zero-seed words match reference file and transliteration"};
}

// 3. Key sensitivity: 100 one-bit-apart key pairs, 1e5 bits each.
outcome c3_sensitivity() {
  ciprng::sensitivity_config cfg; // 100 pairs, 1e5 bits, protocol seed 1
  const auto pairs = ciprng::key_sensitivity(cfg);
  const double mean = ciprng::sensitivity_mean(pairs);
  double lo = 1.0, hi = 0.0;
  for (const auto& p : pairs) {
    lo = std::min(lo, p.result.ratio);
    hi = std::max(hi, p.result.ratio);
  }
  const bool ok = mean >= 0.47 && mean <= 0.53 && lo >= 0.40 && hi <= 0.60;
  return {ok, fmt("mean %.4f in [0.47,0.53], pair range [%.4f,%.4f] in [0.40,0.60]",
                  mean, lo, hi)};
}

// 4. Battery on 1e7 keyed bits passes; all-zeros and alternating streams fail.
outcome c4_battery() {
  constexpr std::size_t n_bits = 10'000'000;
  auto gen = ciprng::make_ci_prng(fixed_key(), ciprng::ci_params{});
  const auto keyed =
      ciprng::run_battery(ciprng::battery_input_from_bits(gen.next_bits(n_bits), 32));
  std::size_t keyed_pass = 0;
  for (const auto& r : keyed)
    keyed_pass += r.pass;

  ciprng::bit_vector zeros(n_bits, 0);
  const auto zero_reports =
      ciprng::run_battery(ciprng::battery_input_from_bits(std::move(zeros), 32));
  std::size_t zero_fail = 0;
  for (const auto& r : zero_reports)
    zero_fail += !r.pass;

  ciprng::bit_vector alt(n_bits);
  for (std::size_t i = 0; i < n_bits; ++i)
    alt[i] = static_cast<std::uint8_t>(i & 1u);
  const auto alt_reports =
      ciprng::run_battery(ciprng::battery_input_from_bits(std::move(alt), 32));
  std::size_t alt_fail = 0;
  for (const auto& r : alt_reports)
    alt_fail += !r.pass;

  const bool ok = keyed_pass == keyed.size() && zero_fail >= 1 && alt_fail >= 1;
  return {ok, fmt("keyed %zu/%zu pass, zeros fail %zu, alternating fail %zu",
                  keyed_pass, keyed.size(), zero_fail, alt_fail)};
}

// 5. Chi-square uniformity of 1e6 default-parameter words over 256 bins.
outcome c5_chi_square() {
  auto gen = ciprng::make_ci_prng(fixed_key(), ciprng::ci_params{});
  std::vector<std::uint64_t> words(1'000'000);
  for (auto& w : words)
    w = gen.next_word();
  const auto r = ciprng::chi_square_uniformity(words, 32, 256);
  return {r.pass, fmt("statistic %.2f, p %.6f in [0.001,0.999]", r.statistic,
                      r.p_value)};
}

// 6. Watermark pipeline: involution, exact roundtrip, damage confined to
// the three low bit planes with bounded PSNR, and wrong-key extraction
// indistinguishable from coin flips.
outcome c6_watermark() {
  std::mt19937_64 rng(0x6A09E667F3BCC908ull);

  std::size_t involution_ok = 0;
  constexpr std::size_t involution_trials = 1000;
  for (std::size_t t = 0; t < involution_trials; ++t) {
    const auto key = random_key(rng);
    ciprng::bit_vector wm(64 * 64);
    for (auto& b : wm)
      b = static_cast<std::uint8_t>(rng() & 1u);
    const auto enc = ciprng::encrypt_watermark(key, wm);
    if (ciprng::encrypt_watermark(key, enc) == wm)
      ++involution_ok;
  }
  if (involution_ok != involution_trials)
    return {false, fmt("double encryption identity %zu/%zu", involution_ok,
                       involution_trials)};

  std::size_t roundtrip_ok = 0;
  bool planes_ok = true;
  double min_psnr = INFINITY;
  double ber_sum = 0.0;
  constexpr std::size_t triples = 100;
  for (std::size_t t = 0; t < triples; ++t) {
    const auto key = random_key(rng);
    ciprng::gray_image carrier(64, 64);
    for (auto& p : carrier.pixels)
      p = static_cast<std::uint8_t>(rng());
    ciprng::bit_image wm(32, 32);
    for (auto& b : wm.bits)
      b = static_cast<std::uint8_t>(rng() & 1u);

    const auto marked = ciprng::embed_watermark(key, carrier, wm);
    const auto back = ciprng::extract_watermark(key, marked, 32, 32);
    roundtrip_ok += back.bits == wm.bits;

    for (std::size_t i = 0; i < carrier.pixels.size(); ++i)
      if ((carrier.pixels[i] ^ marked.pixels[i]) & 0xF8u)
        planes_ok = false;
    min_psnr = std::min(min_psnr, ciprng::psnr(carrier, marked));

    auto wrong = key;
    wrong.x0[rng() % wrong.x0.size()] ^= 1u;
    ber_sum += ciprng::bit_error_rate(
        ciprng::extract_watermark(wrong, marked, 32, 32), wm);
  }
  const double ber = ber_sum / triples;
  const bool ok = roundtrip_ok == triples && planes_ok && min_psnr >= 31.2 &&
                  ber >= 0.45 && ber <= 0.55;
  return {ok, fmt("involution %zu/%zu, roundtrip %zu/%zu, planes %s, "
                  "min psnr %.2f dB, wrong-key ber %.4f",
                  involution_ok, involution_trials, roundtrip_ok, triples,
                  planes_ok ? "low-3 only" : "VIOLATED", min_psnr, ber)};
}

// 7. Brute-force equivalence: composite generator vs the standalone
// word-packed oracle, every cell count up to 6, 1e3 rounds.
outcome c7_brute_force() {
  std::mt19937_64 rng(0xBB67AE8584CAA73Bull);
  constexpr std::size_t rounds = 1000;
  for (unsigned n = 2; n <= 6; ++n) {
    const auto key = random_key(rng, n);
    ciprng::ci_params p;
    p.n_cells = n;
    p.round_base = 3 * n;
    auto lib = ciprng::make_ci_prng(key, p);

    const auto seeds = ciprng::derive_seeds(key, "stream");
    ciprng::isaac32 m_src(seeds.isaac_seed);
    ciprng::xorshift32 s_src(seeds.xorshift_seed);
    std::uint64_t x0 = 0;
    for (std::uint8_t b : key.x0)
      x0 = (x0 << 1) | b;
    const auto expect = oracle::composite_words(
        x0, n, 3 * n, rounds, [&] { return m_src.next(); },
        [&] { return s_src.next(); });

    for (std::size_t k = 0; k < expect.size(); ++k)
      if (lib.next_word() != expect[k])
        return {false, fmt("n_cells %u, word %zu diverges", n, k)};
  }
  return {true, "n_cells 2..6, 1000 rounds each, word-exact vs oracle"};
}

struct criterion {
  int id;
  double budget_s;
  outcome (*fn)();
};

constexpr criterion criteria[] = {
    {1, 1.0, c1_worked_example}, {2, 1.0, c2_isaac_oracle},
    {3, 120.0, c3_sensitivity},  {4, 120.0, c4_battery},
    {5, 60.0, c5_chi_square},    {6, 120.0, c6_watermark},
    {7, 10.0, c7_brute_force},
};

} // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i)
    selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    const auto t0 = std::chrono::steady_clock::now();
    outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const bool in_budget = elapsed < c.budget_s;
    const bool pass = o.pass && in_budget;
    std::printf("criterion %d: %s (%s%s) [%.2f s, budget %.0f s]\n", c.id,
                pass ? "PASS" : "FAIL", o.detail.c_str(),
                in_budget ? "" : "; over budget", elapsed, c.budget_s);
    failures += !pass;
  }
  return failures;
}
