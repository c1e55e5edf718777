#pragma once

#include <functional>
#include <vector>

#include "minorlab/numerics.hpp"

namespace minorlab {

// Oriented piecewise integration path. Segments are traversed in order;
// closed contours are the caller's responsibility.
struct ContourSegment {
  enum class Kind { Line, Ellipse };
  Kind kind = Kind::Line;
  Complex z0, z1;      // Line: z(t) = z0 + t (z1 - z0), t in [0,1]
  Complex center;      // Ellipse: z(t) = center + rx cos(theta) + i ry sin(theta)
  double rx = 0.0, ry = 0.0;
  double theta0 = 0.0, theta1 = 0.0;
  int panels = 1;      // composite Gauss-Legendre panels on this segment
};

struct ContourPath {
  std::vector<ContourSegment> segments;
  int points_per_panel = 24;

  static ContourSegment line(Complex z0, Complex z1, int panels = 1);
  // full ellipse, counterclockwise, split into `panels` arcs
  static ContourSegment ellipse(Complex center, double rx, double ry, int panels = 8);
  static ContourSegment arc(Complex center, double rx, double ry, double theta0, double theta1,
                            int panels = 4);
  static ContourPath circle(Complex center, double radius, int panels = 8);
};

// Nodes z_k and complex weights w_k (Gauss-Legendre weight times dz/dt) such
// that  integral f dz  ~  sum w_k f(z_k).
struct ContourQuadrature {
  std::vector<Complex> nodes;
  std::vector<Complex> weights;
};

// refine multiplies every panel count by 2^level.
ContourQuadrature discretize(const ContourPath& path, int refine_level = 0);

// Composite quadrature with the resolution-doubling stability contract:
// doubling once must move the value by < rel_tol (default 1e-9) relative,
// else doubling continues; NonConvergenceError beyond hard_tol at the last
// allowed level.
Complex contour_integrate(const std::function<Complex(Complex)>& f, const ContourPath& path,
                          double rel_tol = 1e-9, double hard_tol = 1e-7);

} // namespace minorlab
