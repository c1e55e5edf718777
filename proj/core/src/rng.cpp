#include "minorlab/rng.hpp"

#include <cmath>

namespace minorlab {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace

std::uint64_t RngStream::next_u64() {
  return mix64(seed_ + kGamma * ++counter_);
}

double RngStream::uniform() {
  // 53 random bits, shifted into (0,1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::gaussian(double mean, double variance) {
  if (!(variance > 0.0)) {
    throw ArgumentError("gaussian: variance must be positive");
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return mean + std::sqrt(variance) * r * std::cos(6.283185307179586476925286766559 * u2);
}

double RngStream::exponential(double rate) {
  if (!(rate > 0.0)) {
    throw ArgumentError("exponential: rate must be positive");
  }
  return -std::log(uniform()) / rate;
}

std::uint64_t RngStream::geometric(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw ArgumentError("geometric: parameter must be in (0,1)");
  }
  const double u = uniform();
  const double k = std::floor(std::log(u) / std::log(q));
  return k < 0.0 ? 0 : static_cast<std::uint64_t>(k);
}

double RngStream::chi_square_2k(unsigned k) {
  double s = 0.0;
  for (unsigned i = 0; i < 2 * k; ++i) {
    const double g = gaussian(0.0, 1.0);
    s += g * g;
  }
  return s;
}

RngStream RngStream::split(std::uint64_t label) const {
  return RngStream(mix64(seed_ ^ mix64(label + 0x6a09e667f3bcc909ULL)));
}

RngStream RngStream::split(std::string_view label) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 0x100000001b3ULL;
  }
  return split(h);
}

} // namespace minorlab
