#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"

namespace ciprng {

// Two-sided acceptance band for p-values. A p-value outside [0.001, 0.999]
// fails: too small means the structure tested for is present, too large
// means the sequence is suspiciously regular for a random source.
inline constexpr double pass_band_lo = 0.001;
inline constexpr double pass_band_hi = 0.999;

struct test_report {
  std::string name;
  double statistic = 0.0;
  double p_value = 0.0;
  bool pass = false;
};

inline test_report make_report(std::string name, double statistic, double p) {
  if (p < 0.0)
    p = 0.0;
  if (p > 1.0)
    p = 1.0;
  test_report r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.p_value = p;
  r.pass = p >= pass_band_lo && p <= pass_band_hi;
  return r;
}

namespace detail {

// Regularized upper incomplete gamma Q(a, x): series for P when x < a + 1,
// modified Lentz continued fraction for Q otherwise (Numerical Recipes
// scheme). Accurate to ~1e-14 relative over the range the battery uses.
inline double igamc(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw std::invalid_argument("igamc: requires a > 0 and x >= 0");
  if (x == 0.0)
    return 1.0;
  const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 10000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16)
        break;
    }
    const double p = sum * std::exp(log_prefix);
    const double q = 1.0 - p;
    return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q);
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny)
      d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny)
      c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16)
      break;
  }
  const double q = std::exp(log_prefix) * h;
  return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q);
}

} // namespace detail

// Frequency test: the normalized excess of ones over zeros should look like
// a standard normal sample.
inline test_report monobit_test(std::span<const std::uint8_t> bits) {
  const std::size_t n = bits.size();
  if (n < 100)
    throw std::invalid_argument("monobit_test: requires at least 100 bits");
  std::int64_t s = 0;
  for (std::uint8_t b : bits)
    s += b ? 1 : -1;
  const double stat = std::fabs(static_cast<double>(s)) / std::sqrt(static_cast<double>(n));
  return make_report("monobit", stat, std::erfc(stat / std::sqrt(2.0)));
}

// Runs test: counts maximal blocks of identical bits and compares against
// the expectation for the observed ones-fraction. Only meaningful when the
// frequency test precondition holds; otherwise reported as a hard fail
// (statistic 0, p 0).
inline test_report runs_test(std::span<const std::uint8_t> bits) {
  const std::size_t n = bits.size();
  if (n < 100)
    throw std::invalid_argument("runs_test: requires at least 100 bits");
  std::size_t ones = 0;
  for (std::uint8_t b : bits)
    ones += b & 1u;
  const double pi = static_cast<double>(ones) / static_cast<double>(n);
  if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(static_cast<double>(n)))
    return make_report("runs", 0.0, 0.0);
  std::size_t v = 1;
  for (std::size_t i = 0; i + 1 < n; ++i)
    v += bits[i] != bits[i + 1];
  const double num =
      std::fabs(static_cast<double>(v) -
                2.0 * static_cast<double>(n) * pi * (1.0 - pi));
  const double den =
      2.0 * std::sqrt(2.0 * static_cast<double>(n)) * pi * (1.0 - pi);
  const double stat = num / den;
  return make_report("runs", stat, std::erfc(stat));
}

// Serial test on overlapping m-bit windows (circular). The statistic is the
// first-difference psi-square, chi-square distributed with 2^(m-1) - 2^(m-2)
// ... i.e. 2^(m-2) half-degrees under randomness.
inline test_report serial_test(std::span<const std::uint8_t> bits, unsigned m = 2) {
  const std::size_t n = bits.size();
  if (m < 2 || m > 16)
    throw std::invalid_argument("serial_test: block length must be in [2, 16]");
  if (n < 100 || (n >> m) < 5)
    throw std::invalid_argument("serial_test: sequence too short for block length");

  const auto psi_sq = [&](unsigned mm) -> double {
    if (mm == 0)
      return 0.0;
    std::vector<std::uint64_t> counts(std::size_t{1} << mm, 0);
    const std::uint32_t mask = (1u << mm) - 1u;
    std::uint32_t idx = 0;
    for (std::size_t i = 0; i + 1 < mm; ++i)
      idx = (idx << 1) | bits[i];
    for (std::size_t i = 0; i < n; ++i) {
      idx = ((idx << 1) | bits[(i + mm - 1) % n]) & mask;
      ++counts[idx];
    }
    double s = 0.0;
    for (std::uint64_t c : counts)
      s += static_cast<double>(c) * static_cast<double>(c);
    return s * static_cast<double>(std::size_t{1} << mm) /
               static_cast<double>(n) -
           static_cast<double>(n);
  };

  const double delta = psi_sq(m) - psi_sq(m - 1);
  const double df_half = static_cast<double>(std::size_t{1} << (m - 2));
  return make_report("serial" + std::to_string(m), delta,
                     detail::igamc(df_half, delta / 2.0));
}

// Correlation between the sequence and itself shifted by lag bits.
inline test_report autocorrelation_test(std::span<const std::uint8_t> bits,
                                        std::size_t lag) {
  const std::size_t n = bits.size();
  if (lag == 0 || lag >= n)
    throw std::invalid_argument("autocorrelation_test: lag must be in (0, n)");
  const std::size_t d = n - lag;
  if (d < 100)
    throw std::invalid_argument("autocorrelation_test: overlap shorter than 100 bits");
  std::size_t a = 0;
  for (std::size_t i = 0; i < d; ++i)
    a += bits[i] ^ bits[i + lag];
  const double stat =
      2.0 *
      std::fabs(static_cast<double>(a) - static_cast<double>(d) / 2.0) /
      std::sqrt(static_cast<double>(d));
  return make_report("autocorrelation" + std::to_string(lag), stat,
                     std::erfc(stat / std::sqrt(2.0)));
}

// Chi-square goodness of fit of output words against the uniform
// distribution, binned by their top bits. bins must be a power of two no
// larger than the word range.
inline test_report chi_square_uniformity(std::span<const std::uint64_t> words,
                                         unsigned word_width,
                                         unsigned bins = 256) {
  if (word_width == 0 || word_width > 64)
    throw std::invalid_argument("chi_square_uniformity: word width must be 1..64");
  if (bins < 2 || (bins & (bins - 1)) != 0)
    throw std::invalid_argument("chi_square_uniformity: bins must be a power of two >= 2");
  unsigned k = 0;
  while ((1u << k) < bins)
    ++k;
  if (k > word_width)
    throw std::invalid_argument("chi_square_uniformity: more bins than word values");
  if (words.size() < 100ull * bins)
    throw std::invalid_argument("chi_square_uniformity: requires at least 100 words per bin");
  std::vector<std::uint64_t> counts(bins, 0);
  for (std::uint64_t w : words)
    ++counts[w >> (word_width - k)];
  const double expected =
      static_cast<double>(words.size()) / static_cast<double>(bins);
  double x = 0.0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    x += d * d / expected;
  }
  return make_report("chi-square" + std::to_string(bins), x,
                     detail::igamc((bins - 1) / 2.0, x / 2.0));
}

// A stream sample in both views the battery needs: the bit sequence and the
// per-round output words it was packed from.
struct battery_input {
  bit_vector bits;
  std::vector<std::uint64_t> words;
  unsigned word_width = 32;
};

// Packs loose bits into words for battery consumption (leftover bits beyond
// the last full word are kept in the bit view only).
inline battery_input battery_input_from_bits(bit_vector bits, unsigned word_width) {
  if (word_width == 0 || word_width > 64)
    throw std::invalid_argument("battery_input_from_bits: word width must be 1..64");
  battery_input in;
  in.word_width = word_width;
  in.words.reserve(bits.size() / word_width);
  for (std::size_t i = 0; i + word_width <= bits.size(); i += word_width) {
    std::uint64_t w = 0;
    for (unsigned j = 0; j < word_width; ++j)
      w = (w << 1) | bits[i + j];
    in.words.push_back(w);
  }
  in.bits = std::move(bits);
  return in;
}

// The five-test desk battery: frequency, runs, serial over bit pairs,
// autocorrelation at lag 8, and word-level uniformity.
inline std::vector<test_report> run_battery(const battery_input& in,
                                            unsigned bins = 256) {
  std::vector<test_report> out;
  out.reserve(5);
  out.push_back(monobit_test(in.bits));
  out.push_back(runs_test(in.bits));
  out.push_back(serial_test(in.bits, 2));
  out.push_back(autocorrelation_test(in.bits, 8));
  out.push_back(chi_square_uniformity(in.words, in.word_width, bins));
  return out;
}

inline bool battery_passed(const std::vector<test_report>& reports) {
  for (const auto& r : reports)
    if (!r.pass)
      return false;
  return true;
}

} // namespace ciprng
