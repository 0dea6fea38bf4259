#pragma once

#include <cstdint>
#include <stdexcept>

namespace ciprng {

// Marsaglia's 32-bit xorshift generator with the (13, 17, 5) shift triple.
// Period 2^32 - 1 over the nonzero states; the all-zero state is absorbing
// and therefore rejected at construction.
class xorshift32 {
public:
  explicit xorshift32(std::uint32_t seed) : y_(seed) {
    if (seed == 0)
      throw std::invalid_argument("xorshift32: seed must be nonzero");
  }

  std::uint32_t next() {
    y_ ^= y_ << 13;
    y_ ^= y_ >> 17;
    y_ ^= y_ << 5;
    return y_;
  }

  std::uint32_t state() const { return y_; }

private:
  std::uint32_t y_;
};

} // namespace ciprng
