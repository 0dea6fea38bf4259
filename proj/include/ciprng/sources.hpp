#pragma once

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ciprng {

// Anything that can hand out 32-bit words one at a time. The composite
// generator is parameterised over two of these (one deciding how many cells
// to negate per round, one picking which cell).
template <class T>
concept word_source = requires(T s) {
  { s.next() } -> std::convertible_to<std::uint32_t>;
};

// Replays a pre-recorded word sequence; used to inject known inputs in
// tests and worked-example fixtures. Throws once the sequence is exhausted
// rather than wrapping around, so an over-consuming caller is caught.
class fixed_words {
public:
  explicit fixed_words(std::vector<std::uint32_t> words)
      : words_(std::move(words)) {}

  std::uint32_t next() {
    if (pos_ >= words_.size())
      throw std::out_of_range("fixed_words: sequence exhausted");
    return words_[pos_++];
  }

  std::size_t remaining() const { return words_.size() - pos_; }

private:
  std::vector<std::uint32_t> words_;
  std::size_t pos_ = 0;
};

} // namespace ciprng
