#pragma once

#include <functional>
#include <vector>

#include "minorlab/numerics.hpp"
#include "minorlab/rng.hpp"

namespace minorlab {

// Cusp-point scaling data for the two-parameter gram chain: the double
// saddle point x0, its parametrization r, and the scaling constants.
struct PearceyGeometry {
  double a = 0.0;
  double b = 0.0;
  double x0 = 0.0;
  double r = 0.0;   // in (-1, r0), r0 ~ -0.6573
  double c = 0.0;   // position scale
  double c1 = 0.0;  // level scale
  double c2 = 0.0;  // geometric position drift
  double c3 = 0.0;  // fluctuation scale
  double f4 = 0.0;  // fourth derivative of the phase at x0 (negative)
};

// Solves the geometry from the left parameter a by bisection in r.
// Throws OutOfRangeError outside the solvable window (a > 0.3436).
PearceyGeometry solve_geometry(double a);

struct PhaseDerivatives {
  Complex f;
  Complex f1;
  Complex f2;
  Complex f3;
};

// Phase function F(z) = z(log z - log c - 1) + log(z-a) + log(z-b) and its
// first three derivatives. Throws BranchError on the cut (real z <= 0).
PhaseDerivatives f_and_derivs(Complex z, const PearceyGeometry& geom);

// Extended Pearcey kernel by quadrature over the scaled limit contours.
// truncation_scale enlarges the ray truncations (contour stability checks).
double pearcey_kernel(double s, double u, double t, double v, double truncation_scale = 1.0);

// Kernel matrix K(s,u_i; t,v_j) sharing one contour discretization.
std::vector<std::vector<double>> pearcey_kernel_grid(double s, double t,
                                                     const std::vector<double>& us,
                                                     const std::vector<double>& vs,
                                                     double truncation_scale = 1.0);

// Finite-n kernel of the two-parameter gram chain under the cusp scaling,
// conjugated and Jacobian-corrected so it converges to pearcey_kernel.
double rescaled_finite_kernel(int n, const PearceyGeometry& geom, double s, double u, double t,
                              double v);

struct NystromGrid {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

NystromGrid nystrom_grid(double lo, double hi, int m);

// det(I - W^{1/2} K W^{1/2}) on the Nystrom grid of m Gauss-Legendre nodes.
double fredholm_det(const std::function<double(double, double)>& kernel, double lo, double hi,
                    int m);

// Fraction of samples of the n-th level of the +-sqrt(n) two-drift Gaussian
// chain whose rescaled points all avoid [e_lo, e_hi].
double pearcey_gap_mc(int n, int samples, double e_lo, double e_hi, RngStream& stream);

} // namespace minorlab
