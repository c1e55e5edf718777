#pragma once

#include <string>
#include <vector>

#include "minorlab/rng.hpp"

namespace minorlab {

// Rate policy pi_ij for the exponential site weights of an m x n lattice.
// case_id 1: pi = 1 - a_j / sqrt(M)   (Gaussian scaling)
// case_id 2: pi = -a_j                (exact gram correspondence)
// case_id 3: pi = i + alpha_j          (M -> infinity Laguerre scaling)
// case_id 4: pi = i + alpha_j          (exact, exponentiated, M' rows)
// case_id 0: explicit rate matrix.
struct RatePolicy {
  int case_id = 0;
  std::vector<double> a;
  std::vector<int> alpha;
  std::vector<double> explicit_rates;  // row-major m x n when case_id == 0

  double rate(int i, int j, int m, int n) const;  // i, j zero-based
  std::string name() const;
};

struct LatticeWeights {
  int m = 0;
  int n = 0;
  std::vector<double> w;  // row-major, w[i*n + j] >= 0
  RatePolicy policy;

  double at(int i, int j) const { return w[static_cast<size_t>(i) * n + j]; }
  double& at(int i, int j) { return w[static_cast<size_t>(i) * n + j]; }
};

// Weakly decreasing increments of the disjoint-chain maxima.
struct ShapeVector {
  std::vector<double> entries;  // mu_1 >= mu_2 >= ... >= mu_n >= 0
  int origin_m = 0;
  int origin_n = 0;
};

LatticeWeights sample_exp_lattice(int m, int n, const RatePolicy& policy, RngStream& stream);

// Independent geometric weights with parameter s_i * t_j.
LatticeWeights sample_geometric_lattice(const std::vector<double>& s,
                                        const std::vector<double>& t, RngStream& stream);

// Maximum total weight of l pairwise site-disjoint chains (site sets weakly
// increasing in both coordinates, free endpoints).
double last_passage(const LatticeWeights& weights, int l);

// All increments at once: entries[k] = L^(k+1) - L^(k).
ShapeVector shape_vector(const LatticeWeights& weights);

// Deterministic per-case map applied to the shape entries (no limit taken).
// shapes[k] is the shape of the first k+1 columns.
std::vector<std::vector<double>> scaled_limit(int case_id,
                                              const std::vector<ShapeVector>& shapes,
                                              int big_m);

// Schur polynomial via the bialternant ratio; coincident entries are handled
// by index-proportional perturbation plus one Richardson step.
double schur_poly(const std::vector<long long>& kappa, const std::vector<double>& x,
                  bool allow_perturbation = true);

// One-step transition mass of the column-by-column shape chain under
// geometric weights.
double schur_transition(const std::vector<long long>& kappa_prev,
                        const std::vector<long long>& kappa, const std::vector<double>& s,
                        double t_n);

// Supremum of a single up-right continuous path collecting Brownian
// increments with drift kappa1 on the first r1 lines and kappa2 after,
// discretized on `steps` time intervals.
double brownian_polymer_sup(int n, int r1, double kappa1, double kappa2, int steps,
                            RngStream& stream);

} // namespace minorlab
