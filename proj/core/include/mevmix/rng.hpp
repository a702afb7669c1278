#pragma once

#include <cstdint>
#include <random>

namespace mevmix {

// Deterministic 64-bit random stream.
//
// Uniform variates are produced from the raw 64-bit output directly rather
// than through std::uniform_real_distribution, whose algorithm is
// implementation-defined; draws are bit-identical across standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream number `stream` derived from a master seed. Used to
  // give each chunk of draws its own stream so results do not depend on how
  // chunks are scheduled across threads.
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double uniform();
  // Standard exponential, strictly positive and finite.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mevmix
