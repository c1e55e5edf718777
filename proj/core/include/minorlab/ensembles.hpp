#pragma once

#include <string>
#include <vector>

#include "minorlab/numerics.hpp"
#include "minorlab/rng.hpp"

namespace minorlab {

enum class ModelKind { GueExt, Wishart, MultipleLaguerre, JacobiPineiro };

std::string to_string(ModelKind kind);

// Which of the four ensembles, with its parameter vector and sizes.
struct ModelSpec {
  ModelKind kind = ModelKind::GueExt;
  int n_levels = 1;            // N
  int m = 0;                   // M (Wishart / MultipleLaguerre / JacobiPineiro)
  int m_prime = 0;             // M' (JacobiPineiro)
  std::vector<double> a;       // GueExt (any reals) or Wishart (negative), length N
  std::vector<int> alpha;      // MultipleLaguerre / JacobiPineiro, length N

  // Throws ArgumentError on any violated constraint.
  void validate() const;

  // Eigenvalue range of the model: (-inf,inf), [0,inf) or [0,1].
  double range_lo() const;
  double range_hi() const;
  bool in_range(double x) const;
};

// Triangular interlacing array: levels[n-1] holds the n ascending eigenvalues
// of the n-th consecutive matrix.
struct GTPattern {
  std::vector<std::vector<double>> levels;
  ModelSpec model;

  int n_levels() const { return static_cast<int>(levels.size()); }
  const std::vector<double>& level(int n) const { return levels[n - 1]; }

  // nu(n-1) <= mu(n-1) <= nu(n) between consecutive levels, within tol.
  bool interlaced(double tol = 1e-10) const;
  bool in_range() const;
};

GTPattern sample_gue_ext(const ModelSpec& spec, RngStream& stream);
GTPattern sample_wishart(const ModelSpec& spec, RngStream& stream);
GTPattern sample_multiple_laguerre(const ModelSpec& spec, RngStream& stream);
GTPattern sample_jacobi_pineiro(const ModelSpec& spec, RngStream& stream);

// Dispatch on spec.kind.
GTPattern sample_ensemble(const ModelSpec& spec, RngStream& stream);

// Only the top-level spectrum of the GUE-with-source model; avoids the
// O(N^4) minor sweep when lower levels are not needed.
std::vector<double> sample_gue_ext_top_level(const ModelSpec& spec, RngStream& stream);

} // namespace minorlab
