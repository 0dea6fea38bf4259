// Embeds a checkerboard watermark into a synthetic gradient carrier, then
// extracts it back with the right key and with an almost-right key.
#include <cstdio>
#include <ciprng/ciprng.hpp>

int main() {
  ciprng::gray_image carrier(128, 128);
  for (std::size_t y = 0; y < carrier.height; ++y)
    for (std::size_t x = 0; x < carrier.width; ++x)
      carrier.at(x, y) = static_cast<std::uint8_t>((x + 2 * y) & 0xFF);

  ciprng::bit_image wm(32, 32);
  for (std::size_t y = 0; y < wm.height; ++y)
    for (std::size_t x = 0; x < wm.width; ++x)
      wm.at(x, y) = static_cast<std::uint8_t>(((x / 4) ^ (y / 4)) & 1u);

  ciprng::seed_key key;
  key.x0 = ciprng::word_to_bits(0xFACE50FAu, 32);
  key.isaac_key = {'w', 'm', '-', 'd', 'e', 'm', 'o'};
  key.xorshift_seed = 7;

  const auto marked = ciprng::embed_watermark(key, carrier, wm);
  std::printf("embedded %zux%zu watermark into %zux%zu carrier, psnr %.2f dB\n",
              wm.width, wm.height, carrier.width, carrier.height,
              ciprng::psnr(carrier, marked));

  const auto recovered = ciprng::extract_watermark(key, marked, 32, 32);
  std::printf("right key:  ber %.4f\n", ciprng::bit_error_rate(recovered, wm));

  auto wrong = key;
  wrong.x0[0] ^= 1u;
  const auto garbage = ciprng::extract_watermark(wrong, marked, 32, 32);
  std::printf("wrong key:  ber %.4f\n", ciprng::bit_error_rate(garbage, wm));
  return 0;
}
