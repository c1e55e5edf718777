#pragma once

#include <vector>

#include "minorlab/ensembles.hpp"
#include "minorlab/rng.hpp"

namespace minorlab {

// Markov-chain route to the same interlacing law as the direct matrix
// samplers: exact level-to-level transition densities and rank-one-update
// (secular equation) conditional samplers.

// Density of level n given level n-1 (mu may be empty for n = 1).
// Zero off the interlacing set; throws RangeError / DegenerateError.
double transition_density(const ModelSpec& spec, int n, const std::vector<double>& mu,
                          const std::vector<double>& lambda);

// Joint density of a full pattern (product-of-transitions form).
double joint_density(const ModelSpec& spec, const GTPattern& pattern);

// Same quantity via the determinant form with virtual variables.
double joint_density_determinant(const ModelSpec& spec, const GTPattern& pattern);

// Coefficients of the rank-one-update secular equation, recovered from a
// (mu, lambda) pair; used for round-trip checks of the samplers.
struct SecularCoefficients {
  std::vector<double> coupling;  // |h~_i|^2, xi_i or zeta_i, i = 1..n-1
  double scalar = 0.0;           // h_nn, xi_n or zeta_n
};

SecularCoefficients recover_coefficients_gue(const std::vector<double>& mu,
                                             const std::vector<double>& lambda);
SecularCoefficients recover_coefficients_laguerre(const std::vector<double>& mu,
                                                  const std::vector<double>& lambda);

// One conditional step; mu strictly ascending (strictly positive for the
// Laguerre case, strictly inside (0,1) for the Jacobi-Pineiro case).
std::vector<double> sample_transition_gue(const std::vector<double>& mu, double a_n,
                                          RngStream& stream);
std::vector<double> sample_transition_laguerre(const std::vector<double>& mu, int alpha_n,
                                               RngStream& stream);
std::vector<double> sample_transition_jp(const std::vector<double>& mu_tilde, int alpha_n,
                                         int m_prime, int n, RngStream& stream);

// Full chain: level-1 draw from p_1, then transitions.
GTPattern sample_chain(const ModelSpec& spec, RngStream& stream);

} // namespace minorlab
