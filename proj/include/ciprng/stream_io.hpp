#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "bits.hpp"
#include "stats.hpp"

namespace ciprng {

// raw format: packed bytes, first bit in the most significant position.
inline void write_raw_bits(std::ostream& os, std::span<const std::uint8_t> bits) {
  const auto bytes = pack_bits_msb(bits);
  os.write(reinterpret_cast<const char*>(bytes.data()),
           static_cast<std::streamsize>(bytes.size()));
}

inline bit_vector read_raw_bits(std::istream& is) {
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(is),
                                  std::istreambuf_iterator<char>()};
  return unpack_bits_msb(bytes, bytes.size() * 8);
}

// ascii format: '0'/'1' characters, broken into 64-bit lines.
inline void write_ascii_bits(std::ostream& os, std::span<const std::uint8_t> bits) {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    os.put(bits[i] ? '1' : '0');
    if ((i + 1) % 64 == 0)
      os.put('\n');
  }
  if (bits.size() % 64 != 0)
    os.put('\n');
}

inline bit_vector parse_ascii_bits(std::istream& is) {
  bit_vector bits;
  char c;
  while (is.get(c)) {
    if (c == '0' || c == '1')
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (!std::isspace(static_cast<unsigned char>(c)))
      throw std::runtime_error(std::string("parse_ascii_bits: unexpected character '") + c + "'");
  }
  return bits;
}

// words format: one decimal output word per line.
inline void write_words(std::ostream& os, std::span<const std::uint64_t> words) {
  for (std::uint64_t w : words)
    os << w << '\n';
}

namespace detail {

inline std::string fmt_double(double v, const char* spec = "%.10g") {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), spec, v);
  return std::string(buf.data());
}

} // namespace detail

inline void write_point_cloud_csv(std::ostream& os,
                                  std::span<const std::array<double, 3>> pts) {
  os << "x,y,z\n";
  for (const auto& p : pts)
    os << detail::fmt_double(p[0]) << ',' << detail::fmt_double(p[1]) << ','
       << detail::fmt_double(p[2]) << '\n';
}

inline void write_sensitivity_csv(std::ostream& os,
                                  std::span<const sensitivity_pair> pairs) {
  os << "pair,flipped_bit,n,hamming,ratio\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    os << i << ',' << p.flipped_bit << ',' << p.result.n << ','
       << p.result.hamming << ',' << detail::fmt_double(p.result.ratio)
       << '\n';
  }
  os << "# mean " << detail::fmt_double(sensitivity_mean(pairs)) << '\n';
}

inline std::string format_report_line(const test_report& r) {
  std::array<char, 128> buf{};
  std::snprintf(buf.data(), buf.size(), "%-18s statistic %14.6g   p %12.10f   %s",
                r.name.c_str(), r.statistic, r.p_value,
                r.pass ? "PASS" : "FAIL");
  return std::string(buf.data());
}

inline void write_battery_report(std::ostream& os,
                                 std::span<const test_report> reports) {
  std::size_t passed = 0;
  for (const auto& r : reports) {
    os << format_report_line(r) << '\n';
    passed += r.pass;
  }
  os << "battery: " << (passed == reports.size() ? "PASS" : "FAIL") << " ("
     << passed << '/' << reports.size() << " tests passed)\n";
}

// Flat key=value metadata record (the sidecar written next to exported
// streams; reading it back yields everything needed to reproduce the run).
inline void
write_key_values(std::ostream& os,
                 std::span<const std::pair<std::string, std::string>> kv) {
  for (const auto& [k, v] : kv)
    os << k << '=' << v << '\n';
}

inline std::vector<std::uint8_t> parse_hex(std::string_view s) {
  if (s.size() % 2 != 0)
    throw std::invalid_argument("parse_hex: odd-length hex string");
  const auto nibble = [](char c) -> unsigned {
    if (c >= '0' && c <= '9')
      return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f')
      return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F')
      return static_cast<unsigned>(c - 'A' + 10);
    throw std::invalid_argument("parse_hex: invalid hex digit");
  };
  std::vector<std::uint8_t> out(s.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>((nibble(s[2 * i]) << 4) | nibble(s[2 * i + 1]));
  return out;
}

inline std::string hex_string(std::span<const std::uint8_t> bytes) {
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(hex[b >> 4]);
    out.push_back(hex[b & 0xf]);
  }
  return out;
}

} // namespace ciprng
