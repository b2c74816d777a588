#ifndef STABLEFIT_RNG_HPP_
#define STABLEFIT_RNG_HPP_

#include <array>
#include <cmath>
#include <cstdint>

namespace stablefit {

// 64-bit seed. Same seed plus same call sequence gives a bit-identical
// stream on every platform. Replicate streams come from split(), never from
// sharing generator state across workers.
struct RngSeed {
  std::uint64_t value = 0;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Derives an independent child seed for one replicate/stream index by mixing
// (seed, stream) through splitmix64. Serial and parallel runs that use the
// same (seed, index) pairs therefore draw identical samples.
inline RngSeed split(RngSeed seed, std::uint64_t stream) {
  std::uint64_t s = seed.value;
  const std::uint64_t h = splitmix64(s);
  std::uint64_t c = h ^ (stream + 0x9e3779b97f4a7c15ull);
  return RngSeed{splitmix64(c)};
}

// xoshiro256++ (Blackman & Vigna, public domain), state seeded via splitmix64.
class Rng {
 public:
  explicit Rng(RngSeed seed) {
    std::uint64_t s = seed.value;
    for (auto& word : state_) word = splitmix64(s);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on the open interval (0,1); never returns an endpoint, so logs
  // and tangents of the result stay finite.
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential() { return -std::log(uniform_open()); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_;
};

}  // namespace stablefit

#endif  // STABLEFIT_RNG_HPP_
