#include "noisy_ea/bitstring.hpp"

#include <bit>
#include <stdexcept>

#include "noisy_ea/random.hpp"

namespace noisy_ea {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

}  // namespace

BitString::BitString(std::size_t n, bool value)
    : size_(n), words_(word_count(n), value ? ~std::uint64_t{0} : 0) {
  // Padding bits past size_ stay zero so popcount and equality ignore them.
  if (value && (n & 63) != 0) words_.back() = (std::uint64_t{1} << (n & 63)) - 1;
}

BitString BitString::from_string(std::string_view text) {
  BitString bits(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits.set(i, true);
    } else if (text[i] != '0') {
      throw std::invalid_argument("bit string may contain only '0' and '1'");
    }
  }
  return bits;
}

BitString BitString::random(std::size_t n, RandomSource& rng) {
  BitString bits(n);
  for (auto& w : bits.words_) w = rng.next_u64();
  if ((n & 63) != 0) bits.words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
  return bits;
}

BitString BitString::with_distance(std::size_t n, std::size_t distance) {
  if (distance > n) throw std::invalid_argument("distance exceeds length");
  BitString bits(n, true);
  for (std::size_t i = n - distance; i < n; ++i) bits.set(i, false);
  return bits;
}

std::size_t BitString::count_ones() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::string BitString::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

}  // namespace noisy_ea
