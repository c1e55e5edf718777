#include "minorlab/contour.hpp"

#include <cmath>

namespace minorlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

ContourSegment ContourPath::line(Complex z0, Complex z1, int panels) {
  ContourSegment s;
  s.kind = ContourSegment::Kind::Line;
  s.z0 = z0;
  s.z1 = z1;
  s.panels = panels;
  return s;
}

ContourSegment ContourPath::ellipse(Complex center, double rx, double ry, int panels) {
  return arc(center, rx, ry, 0.0, kTwoPi, panels);
}

ContourSegment ContourPath::arc(Complex center, double rx, double ry, double theta0,
                                double theta1, int panels) {
  ContourSegment s;
  s.kind = ContourSegment::Kind::Ellipse;
  s.center = center;
  s.rx = rx;
  s.ry = ry;
  s.theta0 = theta0;
  s.theta1 = theta1;
  s.panels = panels;
  return s;
}

ContourPath ContourPath::circle(Complex center, double radius, int panels) {
  ContourPath p;
  p.segments.push_back(ellipse(center, radius, radius, panels));
  return p;
}

ContourQuadrature discretize(const ContourPath& path, int refine_level) {
  ContourQuadrature q;
  const QuadratureRule base = gauss_legendre(path.points_per_panel, 0.0, 1.0);
  for (const auto& seg : path.segments) {
    const int panels = seg.panels << refine_level;
    for (int p = 0; p < panels; ++p) {
      const double t0 = static_cast<double>(p) / panels;
      const double t1 = static_cast<double>(p + 1) / panels;
      for (int k = 0; k < path.points_per_panel; ++k) {
        const double t = t0 + (t1 - t0) * base.nodes[k];
        const double wt = (t1 - t0) * base.weights[k];
        if (seg.kind == ContourSegment::Kind::Line) {
          q.nodes.push_back(seg.z0 + t * (seg.z1 - seg.z0));
          q.weights.push_back(wt * (seg.z1 - seg.z0));
        } else {
          const double theta = seg.theta0 + t * (seg.theta1 - seg.theta0);
          q.nodes.push_back(seg.center +
                            Complex(seg.rx * std::cos(theta), seg.ry * std::sin(theta)));
          q.weights.push_back(wt * (seg.theta1 - seg.theta0) *
                              Complex(-seg.rx * std::sin(theta), seg.ry * std::cos(theta)));
        }
      }
    }
  }
  return q;
}

Complex contour_integrate(const std::function<Complex(Complex)>& f, const ContourPath& path,
                          double rel_tol, double hard_tol) {
  auto eval = [&](int level) {
    const ContourQuadrature q = discretize(path, level);
    Complex acc(0.0, 0.0);
    for (size_t k = 0; k < q.nodes.size(); ++k) acc += q.weights[k] * f(q.nodes[k]);
    return acc;
  };
  Complex coarse = eval(0);
  for (int level = 1; level <= 3; ++level) {
    const Complex fine = eval(level);
    const double diff = std::abs(fine - coarse);
    const double scale = std::max(1e-300, std::abs(fine));
    if (diff <= rel_tol * scale || diff <= 1e-14) return fine;
    if (level == 3 && diff > hard_tol * scale) {
      throw NonConvergenceError("contour_integrate: value did not stabilize under refinement");
    }
    coarse = fine;
  }
  return coarse;
}

} // namespace minorlab
