#pragma once

#include <vector>

#include "minorlab/contour.hpp"
#include "minorlab/ensembles.hpp"

namespace minorlab {

// Numerical evaluation of the four extended correlation kernels by double
// contour integration, plus the finite biorthogonal-sum route used for
// cross-validation.

struct KernelRequest {
  ModelSpec model;
  int n1 = 1;
  int n2 = 1;
  double x = 0.0;
  double y = 0.0;
};

struct KernelOptions {
  double contour_scale = 1.0;   // enlarges every radius / margin / truncation
  double min_param_gap = 1e-3;  // degeneracy threshold for the contour formulas
  double rel_tol = 1e-9;        // resolution-doubling stability contract
};

// Real-parameter view of the model as the contour formulas see it.
struct KernelModel {
  ModelKind kind = ModelKind::GueExt;
  int m = 0;
  int m_prime = 0;
  std::vector<double> params;  // source values a_k, or real alpha_k
};

KernelModel kernel_model_from_spec(const ModelSpec& spec);

// Double-contour kernel at pairwise-distinct real parameters.
// Throws ParameterDegeneracyError when the minimum gap is below the option
// threshold, RangeError for coordinates outside the model range.
double extended_kernel_at(const KernelModel& km, int n1, int n2, double x, double y,
                          const KernelOptions& opt = {});

// Total public form: coincident parameters are index-split by epsilon and
// Richardson-extrapolated once.
double extended_kernel(const KernelRequest& req, const KernelOptions& opt = {});

// Finite biorthogonal sum (product of one-level functions). Related to
// extended_kernel by exp(conjugation_log(n1,x) - conjugation_log(n2,y)).
// The gram-with-drift model implements the product form valid for n1 >= n2.
double kernel_via_biorthogonal_at(const KernelModel& km, int n1, int n2, double x, double y,
                                  const KernelOptions& opt = {});
double kernel_via_biorthogonal(const KernelRequest& req, const KernelOptions& opt = {});

double kernel_conjugation_log(const KernelModel& km, int n, double x);

// Equal-level kernel of the source-free Gaussian minor chain via a
// Christoffel-Darboux sum of monic orthogonal polynomials; independent of
// the contour machinery.
double classical_kernel_oracle(int n, double x, double y);

// K(n,x;n,x) on a grid of points.
std::vector<double> level_density(const ModelSpec& spec, int n, const std::vector<double>& xs,
                                  const KernelOptions& opt = {});

} // namespace minorlab
