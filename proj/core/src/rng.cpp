#include "qst/rng.hpp"

#include <cmath>
#include <numbers>

namespace qst {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += kGamma;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) {
  std::uint64_t s = seed ^ (kGamma * (key + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 32 | b >> 32);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), eng_(seed) {}

RngStream RngStream::split(std::uint64_t key) const {
  return RngStream(mix_seed(seed_, key));
}

RngStream RngStream::split_path(std::initializer_list<std::uint64_t> keys) const {
  RngStream s = *this;
  for (std::uint64_t k : keys) s = s.split(k);
  return s;
}

std::uint64_t RngStream::next_u64() { return eng_(); }

double RngStream::uniform() {
  // 53 random bits -> [0, 1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = uniform_pos();
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  cached_ = mag * std::sin(ang);
  has_cached_ = true;
  return mag * std::cos(ang);
}

std::complex<double> RngStream::gaussian_complex(double sigma_axis) {
  const double re = gaussian() * sigma_axis;
  const double im = gaussian() * sigma_axis;
  return {re, im};
}

}  // namespace qst
