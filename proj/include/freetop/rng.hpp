#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace freetop {

/// mt19937_64 with helper draws. std::uniform_int_distribution is
/// implementation-defined, so bounded draws go through plain modulo here:
/// identical streams on every platform, which the canonical-report
/// determinism checks rely on.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform-ish value in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

  /// Uniform-ish value in [lo, hi] inclusive.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool coin() { return (eng_() & 1) != 0; }

private:
  std::mt19937_64 eng_;
};

/// Stable seed for a named sub-experiment: running a suite alone or as part
/// of a bundle must draw the same stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h ^ (seed * 0x9e3779b97f4a7c15ull);
}

}  // namespace freetop
