#pragma once
#include <cstdint>
#include <limits>

namespace wcf {

/// Counter-based random stream: the state is a pure function of
/// (seed, stream index), so every stream can be opened independently and
/// results do not depend on execution order. Generation is the splitmix64
/// sequence; satisfies UniformRandomBitGenerator so the standard
/// distributions work on top of it.
class RunRng {
 public:
  using result_type = std::uint64_t;

  RunRng(std::uint64_t seed, std::uint64_t index) : state_(mix(seed, index)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return finalize(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  static std::uint64_t finalize(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = finalize(seed + 0x9e3779b97f4a7c15ULL);
    z = finalize(z ^ (index + 0xd1b54a32d192ed03ULL));
    return z;
  }

  std::uint64_t state_;
};

}  // namespace wcf
