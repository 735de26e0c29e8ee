#pragma once

#include <cmath>
#include <cstdint>

namespace noisy_ea {

/// A point estimate with its standard error (zero for exact values).
struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// Exact running moments of an integer-valued sample. Merging is associative
/// and order-independent, so chunked parallel sums are reproducible.
class IntegerMoments {
 public:
  void add(std::int64_t x) noexcept {
    ++count_;
    sum_ += x;
    sum_sq_ += static_cast<__int128>(x) * x;
  }

  void merge(const IntegerMoments& other) noexcept {
    count_ += other.count_;
    sum_ += other.sum_;
    sum_sq_ += other.sum_sq_;
  }

  std::uint64_t count() const noexcept { return count_; }
  std::int64_t sum() const noexcept { return static_cast<std::int64_t>(sum_); }

  double mean() const noexcept {
    return count_ == 0 ? 0.0 : static_cast<double>(sum_) / static_cast<double>(count_);
  }

  /// Sample variance with divisor count - 1; zero for fewer than two values.
  double variance() const noexcept {
    if (count_ < 2) return 0.0;
    const auto k = static_cast<__int128>(count_);
    const __int128 numerator = k * sum_sq_ - sum_ * sum_;
    return static_cast<double>(numerator) / (static_cast<double>(count_) * (count_ - 1));
  }

  double stddev() const noexcept { return std::sqrt(variance()); }

  Estimate estimate() const noexcept {
    return {mean(), count_ == 0 ? 0.0 : stddev() / std::sqrt(static_cast<double>(count_))};
  }

 private:
  std::uint64_t count_ = 0;
  __int128 sum_ = 0;
  __int128 sum_sq_ = 0;
};

}  // namespace noisy_ea
