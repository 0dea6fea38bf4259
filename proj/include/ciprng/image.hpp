#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"
#include "version.hpp"

namespace ciprng {

// 8-bit grayscale raster, row-major.
struct gray_image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  gray_image() = default;
  gray_image(std::size_t w, std::size_t h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(w * h, fill) {
    if (w == 0 || h == 0)
      throw std::invalid_argument("gray_image: zero dimension");
  }

  std::uint8_t& at(std::size_t x, std::size_t y) {
    if (x >= width || y >= height)
      throw std::out_of_range("gray_image: pixel out of range");
    return pixels[y * width + x];
  }
  std::uint8_t at(std::size_t x, std::size_t y) const {
    if (x >= width || y >= height)
      throw std::out_of_range("gray_image: pixel out of range");
    return pixels[y * width + x];
  }
};

// Bilevel raster, row-major, one byte per bit value. 1 means black, the
// netpbm convention.
struct bit_image {
  std::size_t width = 0;
  std::size_t height = 0;
  bit_vector bits;

  bit_image() = default;
  bit_image(std::size_t w, std::size_t h) : width(w), height(h), bits(w * h, 0) {
    if (w == 0 || h == 0)
      throw std::invalid_argument("bit_image: zero dimension");
  }

  std::uint8_t& at(std::size_t x, std::size_t y) {
    if (x >= width || y >= height)
      throw std::out_of_range("bit_image: pixel out of range");
    return bits[y * width + x];
  }
  std::uint8_t at(std::size_t x, std::size_t y) const {
    if (x >= width || y >= height)
      throw std::out_of_range("bit_image: pixel out of range");
    return bits[y * width + x];
  }
};

namespace detail {

// Reads the next header token, treating '#' comments as whitespace.
inline std::string pnm_token(std::istream& is) {
  std::string tok;
  int c;
  while ((c = is.get()) != EOF) {
    if (c == '#') {
      while ((c = is.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c))
      continue;
    break;
  }
  if (c == EOF)
    throw std::runtime_error("netpbm: truncated header");
  tok.push_back(static_cast<char>(c));
  while ((c = is.get()) != EOF && !std::isspace(c) && c != '#')
    tok.push_back(static_cast<char>(c));
  if (c != EOF)
    is.unget(); // leave the terminator for the caller (raster starts after it)
  return tok;
}

inline std::size_t pnm_number(std::istream& is) {
  const std::string tok = pnm_token(is);
  std::size_t value = 0;
  for (char ch : tok) {
    if (ch < '0' || ch > '9')
      throw std::runtime_error("netpbm: malformed header number '" + tok + "'");
    value = value * 10 + static_cast<std::size_t>(ch - '0');
  }
  return value;
}

} // namespace detail

// P5 binary PGM, 8-bit only.
inline void write_pgm(std::ostream& os, const gray_image& img) {
  os << "P5\n# " << tool_name << ' ' << tool_version << '\n'
     << img.width << ' ' << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.pixels.data()),
           static_cast<std::streamsize>(img.pixels.size()));
}

inline gray_image read_pgm(std::istream& is) {
  if (detail::pnm_token(is) != "P5")
    throw std::runtime_error("read_pgm: not a binary PGM (P5) file");
  const std::size_t w = detail::pnm_number(is);
  const std::size_t h = detail::pnm_number(is);
  const std::size_t maxval = detail::pnm_number(is);
  if (w == 0 || h == 0)
    throw std::runtime_error("read_pgm: zero dimension");
  if (maxval != 255)
    throw std::runtime_error("read_pgm: only maxval 255 is supported");
  is.get(); // the single whitespace byte before the raster
  gray_image img(w, h);
  is.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (static_cast<std::size_t>(is.gcount()) != img.pixels.size())
    throw std::runtime_error("read_pgm: truncated raster");
  return img;
}

// P4 binary PBM: rows packed 8 pixels per byte, most significant bit first,
// each row padded to a whole byte.
inline void write_pbm(std::ostream& os, const bit_image& img) {
  os << "P4\n# " << tool_name << ' ' << tool_version << '\n'
     << img.width << ' ' << img.height << '\n';
  const std::size_t row_bytes = (img.width + 7) / 8;
  std::vector<std::uint8_t> row(row_bytes);
  for (std::size_t y = 0; y < img.height; ++y) {
    std::fill(row.begin(), row.end(), 0);
    for (std::size_t x = 0; x < img.width; ++x)
      if (img.bits[y * img.width + x] & 1u)
        row[x >> 3] |= static_cast<std::uint8_t>(0x80u >> (x & 7u));
    os.write(reinterpret_cast<const char*>(row.data()),
             static_cast<std::streamsize>(row_bytes));
  }
}

// Accepts both the binary (P4) and plain-text (P1) PBM forms.
inline bit_image read_pbm(std::istream& is) {
  const std::string magic = detail::pnm_token(is);
  if (magic != "P4" && magic != "P1")
    throw std::runtime_error("read_pbm: not a PBM (P1/P4) file");
  const std::size_t w = detail::pnm_number(is);
  const std::size_t h = detail::pnm_number(is);
  if (w == 0 || h == 0)
    throw std::runtime_error("read_pbm: zero dimension");
  bit_image img(w, h);
  if (magic == "P4") {
    is.get();
    const std::size_t row_bytes = (w + 7) / 8;
    std::vector<std::uint8_t> row(row_bytes);
    for (std::size_t y = 0; y < h; ++y) {
      is.read(reinterpret_cast<char*>(row.data()),
              static_cast<std::streamsize>(row_bytes));
      if (static_cast<std::size_t>(is.gcount()) != row_bytes)
        throw std::runtime_error("read_pbm: truncated raster");
      for (std::size_t x = 0; x < w; ++x)
        img.bits[y * w + x] = (row[x >> 3] >> (7 - (x & 7u))) & 1u;
    }
  } else {
    for (std::size_t i = 0; i < w * h; ++i) {
      const std::string tok = detail::pnm_token(is);
      if (tok != "0" && tok != "1")
        throw std::runtime_error("read_pbm: plain PBM values must be 0 or 1");
      img.bits[i] = static_cast<std::uint8_t>(tok == "1");
    }
  }
  return img;
}

// Peak signal-to-noise ratio between two same-size images, in dB;
// +infinity when the images are identical.
inline double psnr(const gray_image& a, const gray_image& b) {
  if (a.width != b.width || a.height != b.height)
    throw std::invalid_argument("psnr: image dimensions differ");
  double se = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const double d =
        static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
    se += d * d;
  }
  if (se == 0.0)
    return std::numeric_limits<double>::infinity();
  const double mse = se / static_cast<double>(a.pixels.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

} // namespace ciprng
