#pragma once

#include <cstdint>
#include <random>

namespace jetcurv {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

// mt19937_64 with hand-rolled output mappings. The standard pins down the
// engine's bit stream but not the distributions, and reports promise to be
// byte-identical for a fixed seed, so we avoid <random>'s distribution types.
class Prng {
 public:
  explicit Prng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Small ranges only; the slight modulo bias is irrelevant for test data.
  long long uniform_int(long long lo, long long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long long>(eng_() % span);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace jetcurv
