#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include <ciprng/watermark.hpp>

using ciprng::bit_image;
using ciprng::bit_vector;
using ciprng::gray_image;
using ciprng::seed_key;

namespace {

seed_key make_key(std::uint64_t salt) {
  std::mt19937_64 rng(salt * 0x9E3779B97F4A7C15ull + 1);
  seed_key k;
  k.x0.resize(32);
  for (auto& b : k.x0)
    b = static_cast<std::uint8_t>(rng() & 1u);
  k.isaac_key.resize(24);
  for (auto& b : k.isaac_key)
    b = static_cast<std::uint8_t>(rng());
  k.xorshift_seed = static_cast<std::uint32_t>(rng());
  return k;
}

gray_image random_carrier(std::size_t w, std::size_t h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  gray_image img(w, h);
  for (auto& p : img.pixels)
    p = static_cast<std::uint8_t>(rng());
  return img;
}

bit_image random_watermark(std::size_t w, std::size_t h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  bit_image img(w, h);
  for (auto& b : img.bits)
    b = static_cast<std::uint8_t>(rng() & 1u);
  return img;
}

} // namespace

TEST_CASE("watermark encryption is a keyed involution") {
  const auto key = make_key(1);
  for (std::size_t len : {64u * 64u, 100u, 7u}) {
    std::mt19937 rng(static_cast<std::uint32_t>(len));
    bit_vector wm(len);
    for (auto& b : wm)
      b = rng() & 1u;
    const auto enc = ciprng::encrypt_watermark(key, wm, 513);
    CHECK(enc.size() == len);
    CHECK(enc != wm);
    CHECK(ciprng::encrypt_watermark(key, enc, 513) == wm);
  }
}

TEST_CASE("watermark encryption is deterministic and key dependent") {
  bit_vector wm(4096, 0);
  const auto a = ciprng::encrypt_watermark(make_key(2), wm);
  const auto b = ciprng::encrypt_watermark(make_key(2), wm);
  const auto c = ciprng::encrypt_watermark(make_key(3), wm);
  CHECK(a == b);
  const double diff = static_cast<double>(ciprng::hamming_distance(a, c)) / 4096.0;
  CHECK(diff > 0.2);
  CHECK(diff < 0.7);
}

TEST_CASE("encryption argument guards") {
  const auto key = make_key(4);
  CHECK_THROWS_AS(ciprng::encrypt_watermark(key, bit_vector{}, 100),
                  std::invalid_argument);
}

TEST_CASE("zero iterations is the identity encryption") {
  const auto key = make_key(4);
  const bit_vector wm{1, 0, 0, 1, 1, 0, 1, 0};
  CHECK(ciprng::encrypt_watermark(key, wm, 0) == wm);
}

TEST_CASE("low plane extraction and write-back") {
  gray_image img(2, 1);
  img.pixels = {0b00000101, 0xFF};
  const auto plane = ciprng::lsb_plane(img);
  CHECK(plane == bit_vector{1, 0, 1, 1, 1, 1});

  CHECK(ciprng::lsb_plane(gray_image(3, 2)) == bit_vector(18, 0));

  // write-back of an untouched plane reproduces the image exactly
  std::mt19937 rng(9);
  gray_image noisy(16, 16);
  for (auto& p : noisy.pixels)
    p = static_cast<std::uint8_t>(rng());
  CHECK(ciprng::set_lsb_plane(noisy, ciprng::lsb_plane(noisy)).pixels ==
        noisy.pixels);

  // substitution keeps the five high bits of every pixel
  const auto cleared = ciprng::set_lsb_plane(noisy, bit_vector(3 * 256, 0));
  for (std::size_t i = 0; i < noisy.pixels.size(); ++i)
    CHECK(cleared.pixels[i] == (noisy.pixels[i] & 0xF8));

  CHECK_THROWS_AS(ciprng::set_lsb_plane(noisy, bit_vector(5, 0)),
                  std::invalid_argument);
}

TEST_CASE("position recurrence golden run with scripted words") {
  // u(0) = 7 mod 10 = 7
  // u(1) = (3 + 2*7 + 0) mod 10 = 7
  // u(2) = (5 + 2*7 + 1) mod 10 = 0
  // u(3) = (1 + 2*0 + 2) mod 10 = 3
  ciprng::fixed_words src({7, 3, 5, 1});
  const auto u = ciprng::u_sequence_from(src, 4, 10);
  CHECK(u == std::vector<std::uint64_t>{7, 7, 0, 3});
}

TEST_CASE("position recurrence matches its closed form") {
  // u(n) = 2^n u(0) + sum_{k=0}^{n-1} 2^(n-1-k) (s(k+1) + k), all mod m
  const std::uint64_t m = 1000003;
  std::mt19937 rng(73);
  std::vector<std::uint32_t> s(21);
  for (auto& w : s)
    w = rng();
  ciprng::fixed_words src(s);
  const auto u = ciprng::u_sequence_from(src, s.size(), m);

  const auto pow2 = [&](std::size_t e) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i)
      r = r * 2 % m;
    return r;
  };
  for (std::size_t n = 0; n < u.size(); ++n) {
    std::uint64_t expect = pow2(n) * (s[0] % m) % m;
    for (std::size_t k = 0; k < n; ++k)
      expect = (expect + pow2(n - 1 - k) * ((s[k + 1] + k) % m)) % m;
    CHECK(u[n] == expect);
  }
}

TEST_CASE("first-visit position filter skips duplicates") {
  ciprng::fixed_words src({7, 3, 5, 1});
  const auto pos = ciprng::detail::unique_positions_from(src, 3, 10);
  CHECK(pos == std::vector<std::uint64_t>{7, 0, 3});
  CHECK(src.remaining() == 0); // the duplicate cost one extra draw
  ciprng::fixed_words src2({1});
  CHECK_THROWS_AS(ciprng::detail::unique_positions_from(src2, 11, 10),
                  std::invalid_argument);
}

TEST_CASE("keyed position sequence is deterministic and in range") {
  const auto key = make_key(5);
  const auto u = ciprng::u_sequence(key, 500, 3 * 64 * 64);
  CHECK(u.size() == 500);
  CHECK(u == ciprng::u_sequence(key, 500, 3 * 64 * 64));
  for (auto v : u)
    CHECK(v < 3u * 64 * 64);
  const auto other = ciprng::u_sequence(make_key(6), 500, 3 * 64 * 64);
  CHECK(u != other);
}

TEST_CASE("embed and extract round trip exactly") {
  for (std::uint32_t trial = 0; trial < 5; ++trial) {
    const auto key = make_key(100 + trial);
    const auto carrier = random_carrier(64, 32, 500 + trial);
    const auto wm = random_watermark(16, 8, 900 + trial);
    const auto marked = ciprng::embed_watermark(key, carrier, wm, 600);
    const auto out = ciprng::extract_watermark(key, marked, 16, 8, 600);
    CAPTURE(trial);
    REQUIRE(out.bits == wm.bits);
  }
}

TEST_CASE("embedding touches only the three low bit planes") {
  const auto key = make_key(7);
  const auto carrier = random_carrier(48, 48, 77);
  const auto wm = random_watermark(32, 32, 78);
  const auto marked = ciprng::embed_watermark(key, carrier, wm);
  REQUIRE(marked.pixels.size() == carrier.pixels.size());
  for (std::size_t i = 0; i < carrier.pixels.size(); ++i)
    CHECK((carrier.pixels[i] ^ marked.pixels[i]) <= 7);
  CHECK(ciprng::psnr(carrier, marked) >= 31.2);
}

TEST_CASE("embedding is idempotent under the same key and watermark") {
  const auto key = make_key(8);
  const auto carrier = random_carrier(40, 40, 81);
  const auto wm = random_watermark(16, 16, 82);
  const auto once = ciprng::embed_watermark(key, carrier, wm, 700);
  const auto twice = ciprng::embed_watermark(key, once, wm, 700);
  CHECK(once.pixels == twice.pixels);
}

TEST_CASE("wrong key extraction reads noise") {
  const auto key = make_key(9);
  const auto carrier = random_carrier(64, 64, 91);
  const auto wm = random_watermark(32, 32, 92);
  const auto marked = ciprng::embed_watermark(key, carrier, wm);
  const auto out = ciprng::extract_watermark(make_key(10), marked, 32, 32);
  const double ber = ciprng::bit_error_rate(out, wm);
  CHECK(ber > 0.3);
  CHECK(ber < 0.7);
}

TEST_CASE("capacity limits are enforced") {
  const auto key = make_key(11);
  const auto wm = random_watermark(64, 64, 93);
  gray_image tiny(16, 16); // capacity 768 < 4096
  CHECK_THROWS_AS(ciprng::embed_watermark(key, tiny, wm), std::invalid_argument);
  CHECK_THROWS_AS(ciprng::extract_watermark(key, tiny, 64, 64), std::invalid_argument);
  CHECK_THROWS_AS(ciprng::extract_watermark(key, tiny, 0, 4), std::invalid_argument);
}

TEST_CASE("bit error rate requires matching shapes") {
  const auto a = random_watermark(8, 8, 1);
  const auto b = random_watermark(8, 9, 2);
  CHECK_THROWS_AS(ciprng::bit_error_rate(a, b), std::invalid_argument);
  CHECK(ciprng::bit_error_rate(a, a) == 0.0);
}
