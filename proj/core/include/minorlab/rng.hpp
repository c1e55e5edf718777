#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "minorlab/errors.hpp"

namespace minorlab {

// Counter-based stream: output k depends only on (seed, k), so a stream can
// be replayed or split without touching global state. Same seed and call
// sequence gives bit-identical results.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), counter_(0) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t position() const { return counter_; }

  std::uint64_t next_u64();

  // Uniform on (0,1]; never returns 0 so log(u) is safe.
  double uniform();

  double gaussian(double mean, double variance);

  // Exponential with rate lambda (mean 1/lambda).
  double exponential(double rate);

  // Geometric on {0,1,...} with P(k) = (1-q) q^k.
  std::uint64_t geometric(double q);

  // Chi-square with 2k degrees of freedom, as a sum of 2k squared normals.
  double chi_square_2k(unsigned k);

  // Child stream whose seed is a hash of (seed, label); independent of the
  // parent's position.
  RngStream split(std::uint64_t label) const;
  RngStream split(std::string_view label) const;

private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

} // namespace minorlab
