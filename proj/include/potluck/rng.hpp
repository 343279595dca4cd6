#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>

namespace potluck {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based random stream. The n-th output is a pure function of
/// (key, n), so streams derived from distinct paths are independent of each
/// other and of evaluation order. Output is identical on every platform.
class Stream {
 public:
  constexpr Stream() = default;
  constexpr explicit Stream(std::uint64_t key) : key_(key) {}

  /// Derives a child stream keyed by `seed` followed by each label in `path`.
  static constexpr Stream derive(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t key = splitmix64(seed);
    for (std::uint64_t label : path) key = splitmix64(key ^ splitmix64(label + 0x632be59bd9b4e019ULL));
    return Stream(key);
  }

  constexpr std::uint64_t next_u64() {
    ++counter_;
    return splitmix64(key_ + counter_ * 0xd1b54a32d192ed03ULL);
  }

  /// Uniform double in [0, 1) with 53 bits of resolution.
  constexpr double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  constexpr double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Unbiased uniform integer in the closed range [lo, hi].
  constexpr std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());
    const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % span;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return lo + static_cast<std::int64_t>(x % span);
  }

  /// Uniform index in [0, n). n must be positive.
  constexpr std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// Stream labels. Every random draw in a simulation comes from a stream derived
// from the master seed and one of these labels.
namespace streams {
inline constexpr std::uint64_t kDemand = 1;
inline constexpr std::uint64_t kSetup = 2;
inline constexpr std::uint64_t kAgent = 3;
inline constexpr std::uint64_t kPredictor = 4;
}  // namespace streams

}  // namespace potluck
