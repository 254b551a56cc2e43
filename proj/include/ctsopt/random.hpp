#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ctsopt {

std::uint64_t splitmix64(std::uint64_t x);
/// FNV-1a over the bytes of s, folded with splitmix64.
std::uint64_t hash_string(std::string_view s, std::uint64_t seed = 0);

/// Seeded pseudo-random stream. Every draw is derived from raw 64-bit engine
/// output (no std:: distributions), so sequences are identical across
/// standard libraries and platforms.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  /// Child stream determined by (seed, id) only; independent of how many
  /// draws this stream has already produced.
  RandomStream split(std::uint64_t id) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ctsopt
