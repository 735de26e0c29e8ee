#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace noisy_ea {

class RandomSource;

/// Fixed-length bit string packed into 64-bit words.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n, bool value = false);

  static BitString zeros(std::size_t n) { return BitString(n, false); }
  static BitString ones(std::size_t n) { return BitString(n, true); }
  /// Parses a string of '0'/'1' characters; throws std::invalid_argument otherwise.
  static BitString from_string(std::string_view text);
  static BitString random(std::size_t n, RandomSource& rng);
  /// `n - distance` leading ones followed by `distance` zeros.
  static BitString with_distance(std::size_t n, std::size_t distance);

  std::size_t size() const noexcept { return size_; }

  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void flip_all(std::span<const std::uint32_t> positions) noexcept {
    for (auto p : positions) flip(p);
  }

  std::size_t count_ones() const noexcept;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace noisy_ea
