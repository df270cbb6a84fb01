#pragma once

#include <cstdint>

namespace crowdlim {

namespace detail {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Seedable counter-based generator (splitmix64). Every simulation activity
/// owns its own stream; substreams are derived by hashing so trials and sweep
/// points never share state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return detail::mix64(state_);
  }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) {
    // Lemire multiply-shift reduction; bias is below 2^-64 per call.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  bool next_bernoulli(double p) { return next_unit() < p; }

  /// Independent substream keyed on (current state, index).
  Rng derive(std::uint64_t stream_index) const {
    std::uint64_t s = detail::mix64(state_ ^ 0x5851F42D4C957F2DULL);
    s = detail::mix64(s + (stream_index + 1) * 0x14057B7EF767814FULL);
    return Rng(s);
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

/// Seed for grid point `index` of a sweep rooted at `base_seed`.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  return Rng(base_seed).derive(index).state();
}

}  // namespace crowdlim
