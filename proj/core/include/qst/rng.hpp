#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace qst {

// Splittable seeded random stream. Child streams are derived from the
// parent's seed and an integer key, never from the parent's evolved state,
// so a stream tree is fully determined by (master seed, key path) and
// results do not depend on scheduling or worker count.
//
// The engine is std::mt19937_64 (bit-exact by the standard); all
// distributions are generated locally (never std:: distributions, whose
// algorithms are implementation-defined).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  // Deterministic child stream for the given key.
  RngStream split(std::uint64_t key) const;
  // Convenience for nested derivations: split(a).split(b)...
  RngStream split_path(std::initializer_list<std::uint64_t> keys) const;

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();
  double uniform();      // [0, 1)
  double uniform_pos();  // (0, 1]
  double gaussian();     // N(0, 1), Box-Muller with cached second deviate
  // Complex value with independent N(0, sigma_axis^2) real and imaginary parts.
  std::complex<double> gaussian_complex(double sigma_axis);

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// SplitMix64 output function, used for seed mixing/derivation.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key);

}  // namespace qst
