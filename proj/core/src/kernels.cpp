#include "minorlab/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace minorlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr Complex kI(0.0, 1.0);

double min_gap(const std::vector<double>& v) {
  double g = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < v.size(); ++i) {
    for (size_t j = i + 1; j < v.size(); ++j) {
      g = std::min(g, std::abs(v[i] - v[j]));
    }
  }
  return g;
}

void check_params(const KernelModel& km, int n1, int n2, double x, double y,
                  const KernelOptions& opt) {
  const int levels = std::max(n1, n2);
  if (n1 < 1 || n2 < 1 || levels > static_cast<int>(km.params.size())) {
    throw ArgumentError("kernel: level out of range of the parameter vector");
  }
  std::vector<double> used(km.params.begin(), km.params.begin() + levels);
  if (levels > 1 && min_gap(used) < opt.min_param_gap) {
    throw ParameterDegeneracyError("kernel: parameters closer than the safe gap");
  }
  switch (km.kind) {
    case ModelKind::GueExt:
      break;
    case ModelKind::Wishart:
      for (double a : used) {
        if (!(a < 0.0)) throw ArgumentError("kernel: Wishart parameters must be negative");
      }
      [[fallthrough]];
    case ModelKind::MultipleLaguerre:
      if (!(x > 0.0) || !(y > 0.0)) throw RangeError("kernel: coordinates must be positive");
      break;
    case ModelKind::JacobiPineiro:
      if (!(x > 0.0 && x < 1.0) || !(y > 0.0 && y < 1.0)) {
        throw RangeError("kernel: coordinates must lie in (0,1)");
      }
      break;
  }
}

// ---------------------------------------------------------------------------
// contour builders
// ---------------------------------------------------------------------------

// Closed stadium around the real interval [lo, hi] with margin rho.
ContourPath stadium(double lo, double hi, double rho, int panels_per_unit = 4) {
  ContourPath p;
  const int top_panels = std::max(2, static_cast<int>((hi - lo) * panels_per_unit) + 1);
  p.segments.push_back(ContourPath::arc(Complex(hi, 0.0), rho, rho, -0.5 * kPi, 0.5 * kPi, 4));
  p.segments.push_back(ContourPath::line(Complex(hi, rho), Complex(lo, rho), top_panels));
  p.segments.push_back(ContourPath::arc(Complex(lo, 0.0), rho, rho, 0.5 * kPi, 1.5 * kPi, 4));
  p.segments.push_back(ContourPath::line(Complex(lo, -rho), Complex(hi, -rho), top_panels));
  return p;
}

// Flat ellipse around [lo, hi], low enough to fit under the line contours.
ContourPath flat_ellipse(double lo, double hi, double margin_x, double ry) {
  ContourPath p;
  const double cx = 0.5 * (lo + hi);
  const double rx = 0.5 * (hi - lo) + margin_x;
  const int panels = std::max(16, static_cast<int>(8.0 * rx));
  p.segments.push_back(ContourPath::ellipse(Complex(cx, 0.0), rx, ry, panels));
  return p;
}

// Vertical line C - iT .. C + iT with panels refined around the real axis.
ContourPath vertical_line(double c, double t_max, double fine_half_width) {
  ContourPath p;
  const double f = std::min(fine_half_width, t_max);
  if (f < t_max) {
    p.segments.push_back(ContourPath::line(Complex(c, -t_max), Complex(c, -f),
                                           std::max(2, static_cast<int>((t_max - f) / 2.0) + 1)));
  }
  p.segments.push_back(
      ContourPath::line(Complex(c, -f), Complex(c, f), std::max(8, static_cast<int>(f * 4.0))));
  if (f < t_max) {
    p.segments.push_back(ContourPath::line(Complex(c, f), Complex(c, t_max),
                                           std::max(2, static_cast<int>((t_max - f) / 2.0) + 1)));
  }
  return p;
}

// Rectangle around [lo, hi] x [-h, h], counterclockwise.
ContourPath rectangle(double lo, double hi, double h, int panels_per_unit = 6) {
  ContourPath p;
  const int horiz = std::max(4, static_cast<int>((hi - lo) * panels_per_unit));
  const int vert = std::max(4, static_cast<int>(2.0 * h * panels_per_unit));
  p.segments.push_back(ContourPath::line(Complex(hi, -h), Complex(hi, h), vert));
  p.segments.push_back(ContourPath::line(Complex(hi, h), Complex(lo, h), horiz));
  p.segments.push_back(ContourPath::line(Complex(lo, h), Complex(lo, -h), vert));
  p.segments.push_back(ContourPath::line(Complex(lo, -h), Complex(hi, -h), horiz));
  return p;
}

// ---------------------------------------------------------------------------
// log-space integrands
// ---------------------------------------------------------------------------

struct KernelGeometry {
  ContourPath sigma;   // z contour
  ContourPath gamma;   // w contour
  bool flipped = false;  // true when sigma lies left of gamma (indicator flips)
  bool diff_wz = false;  // true when the coupling is 1/(w-z)
};

Complex log_poly(const std::vector<double>& params, int count, Complex z) {
  Complex s(0.0, 0.0);
  for (int k = 0; k < count; ++k) s += std::log(z - params[k]);
  return s;
}

// exponent of the z-side integrand (the w-side enters with a minus sign)
Complex g_exponent(const KernelModel& km, int level_count, double coord, Complex z,
                   bool z_side) {
  switch (km.kind) {
    case ModelKind::GueExt:
      return 0.5 * z * z - coord * z + log_poly(km.params, level_count, z);
    case ModelKind::Wishart:
      return -coord * z - static_cast<double>(km.m) * std::log(z) +
             log_poly(km.params, level_count, z);
    case ModelKind::MultipleLaguerre: {
      Complex g = log_gamma(z + 1.0) + log_poly(km.params, level_count, z);
      g += z_side ? -(z + 1.0) * std::log(coord) : -z * std::log(coord);
      return g;
    }
    case ModelKind::JacobiPineiro: {
      Complex g = log_poly(km.params, level_count, z);
      for (int k = 1; k <= km.m_prime; ++k) g -= std::log(z + static_cast<double>(k));
      g += z_side ? -(z + 1.0) * std::log(coord) : -z * std::log(coord);
      return g;
    }
  }
  return Complex(0.0, 0.0);
}

KernelGeometry build_geometry(const KernelModel& km, int n1, int n2, double x,
                              const KernelOptions& opt) {
  const double s = opt.contour_scale;
  const int levels = std::max(n1, n2);
  const double pmin = *std::min_element(km.params.begin(), km.params.begin() + levels);
  const double pmax = *std::max_element(km.params.begin(), km.params.begin() + levels);
  KernelGeometry geo;

  switch (km.kind) {
    case ModelKind::GueExt: {
      geo.gamma = stadium(pmin, pmax, 0.35 * s);
      const double margin = 0.5 * s;
      double c;
      if (x >= pmax + margin) {
        c = x;
      } else if (x <= pmin - margin) {
        c = x;
        geo.flipped = true;
      } else {
        c = pmax + margin;
      }
      geo.sigma = vertical_line(c, 12.0 * s, 4.0);
      break;
    }
    case ModelKind::Wishart: {
      const double d = -pmax;  // distance of the closest parameter to 0
      geo.gamma = stadium(pmin, pmax, std::min(0.35, 0.25 * d) * s);
      const double radius = std::min(d / 3.0, (km.m + 4.0) / (1.0 + x)) * s;
      geo.sigma = ContourPath::circle(Complex(0.0, 0.0), radius, 16);
      geo.diff_wz = true;
      break;
    }
    case ModelKind::MultipleLaguerre: {
      geo.gamma = flat_ellipse(pmin, pmax, 0.3 * s, 0.22 * s);
      const double c = -0.5 * s;
      const double t_max = (30.0 + 4.0 * levels) * s;
      geo.sigma = vertical_line(c, t_max, 3.0);
      geo.flipped = true;  // the Mellin line sits left of the parameter contour
      break;
    }
    case ModelKind::JacobiPineiro: {
      geo.gamma = flat_ellipse(pmin, pmax, 0.3 * s, 0.22 * s);
      geo.sigma = rectangle(-km.m_prime - 0.5 * s, pmax + 0.3 * s + 0.25 * s, 0.5 * s);
      break;
    }
  }
  return geo;
}

// Single-contour indicator term by exact residues over params[n1..n2-1].
double indicator_term(const KernelModel& km, int n1, int n2, double x, double y) {
  if (n1 >= n2) return 0.0;
  double total = 0.0;
  for (int m = n1; m < n2; ++m) {
    const double pm = km.params[m];
    double denom = 1.0;
    for (int l = n1; l < n2; ++l) {
      if (l != m) denom *= pm - km.params[l];
    }
    double num;
    switch (km.kind) {
      case ModelKind::GueExt:
      case ModelKind::Wishart:
        num = std::exp((y - x) * pm);
        break;
      case ModelKind::MultipleLaguerre:
      case ModelKind::JacobiPineiro:
        num = std::exp(-(pm + 1.0) * std::log(x) + pm * std::log(y));
        break;
      default:
        num = 0.0;
    }
    total += num / denom;
  }
  return total;
}

double double_contour(const KernelModel& km, int n1, int n2, double x, double y,
                      const KernelGeometry& geo, const KernelOptions& opt, int refine) {
  const ContourQuadrature zq = discretize(geo.sigma, refine);
  const ContourQuadrature wq = discretize(geo.gamma, refine);

  std::vector<Complex> gz(zq.nodes.size()), gw(wq.nodes.size());
  double ref_z = -std::numeric_limits<double>::infinity();
  double ref_w = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < zq.nodes.size(); ++i) {
    gz[i] = g_exponent(km, n1, x, zq.nodes[i], true);
    ref_z = std::max(ref_z, gz[i].real());
  }
  for (size_t j = 0; j < wq.nodes.size(); ++j) {
    gw[j] = g_exponent(km, n2, y, wq.nodes[j], false);
    ref_w = std::min(ref_w, gw[j].real());
  }
  if (ref_z - ref_w > 690.0) {
    throw OverflowGuardError("kernel: magnitudes exceed the double range before cancellation");
  }

  std::vector<Complex> wfac(wq.nodes.size());
  for (size_t j = 0; j < wq.nodes.size(); ++j) {
    wfac[j] = wq.weights[j] * std::exp(Complex(ref_w, 0.0) - gw[j]);
  }

  Complex acc(0.0, 0.0);
  for (size_t i = 0; i < zq.nodes.size(); ++i) {
    const Complex zf = zq.weights[i] * std::exp(gz[i] - Complex(ref_z, 0.0));
    Complex inner(0.0, 0.0);
    if (geo.diff_wz) {
      for (size_t j = 0; j < wq.nodes.size(); ++j) {
        inner += wfac[j] / (wq.nodes[j] - zq.nodes[i]);
      }
    } else {
      for (size_t j = 0; j < wq.nodes.size(); ++j) {
        inner += wfac[j] / (zq.nodes[i] - wq.nodes[j]);
      }
    }
    acc += zf * inner;
  }
  const Complex result = acc * std::exp(ref_z - ref_w) / ((2.0 * kPi * kI) * (2.0 * kPi * kI));

  const double scale = std::max(1.0, std::abs(result.real()));
  if (std::abs(result.imag()) > 1e-6 * scale) {
    throw NonConvergenceError("kernel: imaginary residue too large");
  }
  (void)opt;
  return result.real();
}

} // namespace

KernelModel kernel_model_from_spec(const ModelSpec& spec) {
  KernelModel km;
  km.kind = spec.kind;
  km.m = spec.m;
  km.m_prime = spec.m_prime;
  if (spec.kind == ModelKind::GueExt || spec.kind == ModelKind::Wishart) {
    km.params = spec.a;
  } else {
    km.params.assign(spec.alpha.begin(), spec.alpha.end());
  }
  return km;
}

double extended_kernel_at(const KernelModel& km, int n1, int n2, double x, double y,
                          const KernelOptions& opt) {
  check_params(km, n1, n2, x, y, opt);
  const KernelGeometry geo = build_geometry(km, n1, n2, x, opt);

  double coarse = double_contour(km, n1, n2, x, y, geo, opt, 0);
  double value = coarse;
  bool stable = false;
  for (int level = 1; level <= 2 && !stable; ++level) {
    const double fine = double_contour(km, n1, n2, x, y, geo, opt, level);
    const double diff = std::abs(fine - coarse);
    const double scale = std::max(1e-12, std::abs(fine));
    stable = diff <= opt.rel_tol * scale || diff <= 1e-13;
    if (level == 2 && !stable && diff > 1e-7 * scale) {
      throw NonConvergenceError("extended_kernel: refinement did not stabilize");
    }
    coarse = fine;
    value = fine;
  }

  const double a_term = indicator_term(km, n1, n2, x, y);
  if (geo.flipped) {
    if (x >= y && n1 < n2) value += a_term;
  } else {
    if (x < y && n1 < n2) value -= a_term;
  }
  return value;
}

double extended_kernel(const KernelRequest& req, const KernelOptions& opt) {
  req.model.validate();
  KernelModel km = kernel_model_from_spec(req.model);
  const int levels = std::max(req.n1, req.n2);
  std::vector<double> used(km.params.begin(), km.params.begin() + levels);
  if (levels == 1 || min_gap(used) >= opt.min_param_gap) {
    return extended_kernel_at(km, req.n1, req.n2, req.x, req.y, opt);
  }
  // Coincident parameters: index-proportional epsilon split, one Richardson
  // extrapolation step (the kernel is analytic in the parameters).
  const double eps = opt.min_param_gap;
  const double direction = km.kind == ModelKind::Wishart ? -1.0 : 1.0;
  auto eval = [&](double e) {
    KernelModel pert = km;
    for (size_t k = 0; k < pert.params.size(); ++k) {
      pert.params[k] += direction * e * static_cast<double>(k + 1);
    }
    return extended_kernel_at(pert, req.n1, req.n2, req.x, req.y, opt);
  };
  return 2.0 * eval(0.5 * eps) - eval(eps);
}

// ---------------------------------------------------------------------------
// biorthogonal-sum route
// ---------------------------------------------------------------------------

namespace {

// elementary symmetric polynomials e_0..e_n of the values v
std::vector<double> elementary_symmetric(const std::vector<double>& v) {
  std::vector<double> e(v.size() + 1, 0.0);
  e[0] = 1.0;
  for (size_t i = 0; i < v.size(); ++i) {
    for (size_t k = std::min(i + 1, e.size() - 1); k >= 1; --k) {
      e[k] += v[i] * e[k - 1];
    }
  }
  return e;
}

// monic polynomial with the given roots, ascending coefficients
std::vector<double> poly_from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    c.push_back(0.0);
    for (size_t k = c.size() - 1; k >= 1; --k) c[k] = c[k - 1] - r * c[k];
    c[0] *= -r;
  }
  return c;
}

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

// Expand prod (z - roots) = sum c_k B_k(z) with B_k(z) = (z+1)...(z+k).
std::vector<double> rising_basis_coeffs(const std::vector<double>& roots) {
  std::vector<double> p = poly_from_roots(roots);
  const int n = static_cast<int>(roots.size());
  // basis polynomials
  std::vector<std::vector<double>> basis(n + 1);
  basis[0] = {1.0};
  for (int k = 1; k <= n; ++k) {
    basis[k] = basis[k - 1];
    basis[k].push_back(0.0);
    for (size_t j = basis[k].size() - 1; j >= 1; --j) {
      basis[k][j] = basis[k][j - 1] + k * basis[k][j];
    }
    basis[k][0] *= k;
  }
  std::vector<double> c(n + 1, 0.0);
  for (int k = n; k >= 0; --k) {
    c[k] = p[k];
    for (int j = 0; j <= k; ++j) p[j] -= c[k] * basis[k][j];
  }
  return c;
}

// Monic multiple Hermite polynomial with the given shift parameters,
// from the Gaussian moment expansion (exact).
double hermite_type_two(const std::vector<double>& shifts, double x) {
  std::vector<double> centered(shifts.size());
  for (size_t k = 0; k < shifts.size(); ++k) centered[k] = x - shifts[k];
  const std::vector<double> e = elementary_symmetric(centered);
  // P = sum over even m of (-1)^{m/2} (m-1)!! e_{n-m}; here e indexes choose
  // complements: prod (x - a + it) = sum_m e_{n-m}(x-a) (it)^m
  const int n = static_cast<int>(shifts.size());
  double p = 0.0;
  double dfact = 1.0;  // (m-1)!! for even m, starting at m = 0
  double sign = 1.0;
  for (int m = 0; m <= n; m += 2) {
    if (m > 0) {
      dfact *= m - 1;
      sign = -sign;
    }
    p += sign * dfact * e[n - m];
  }
  return p;
}

// Monic multiple Laguerre (first kind) polynomial via the rising-factorial
// expansion (exact for all x).
double laguerre1_type_two(const std::vector<double>& alphas, double x) {
  const std::vector<double> c = rising_basis_coeffs(alphas);
  return poly_eval(c, x);
}

struct BiorthWork {
  KernelModel km;
  KernelOptions opt;
};

// ---- GUE pieces ----

double gue_psi(const BiorthWork& w, int n, int j, double x) {
  const auto& a = w.km.params;
  if (j >= 0) {
    std::vector<double> shifts(a.begin() + (n - j), a.begin() + n);  // a_{n-j+1}..a_n
    std::reverse(shifts.begin(), shifts.end());
    return std::exp(-0.5 * x * x + a[n - 1] * x) * hermite_type_two(shifts, x);
  }
  // j < 0: line integral with poles a_{n+1}..a_{n-j}. The line is placed on
  // the saddle at Re s = x; poles to its right are added back as residues.
  const int count = -j;
  std::vector<double> poles(a.begin() + n, a.begin() + n + count);
  const ContourPath line = vertical_line(x, 12.0, 4.0);
  auto f = [&](Complex s) {
    Complex denom(1.0, 0.0);
    for (double p : poles) denom *= s - p;
    return std::exp(0.5 * s * s - x * s) / denom;
  };
  const Complex val = contour_integrate(f, line, w.opt.rel_tol) / (std::sqrt(2.0 * kPi) * kI);
  double res_sum = 0.0;
  for (size_t m = 0; m < poles.size(); ++m) {
    if (poles[m] > x) {
      double denom = 1.0;
      for (size_t l = 0; l < poles.size(); ++l) {
        if (l != m) denom *= poles[m] - poles[l];
      }
      res_sum += std::exp(0.5 * poles[m] * poles[m] - x * poles[m]) / denom;
    }
  }
  return std::exp(a[n - 1] * x) * (val.real() + std::sqrt(2.0 * kPi) * res_sum);
}

double gue_phi(const BiorthWork& w, int n, int j, double y) {
  const auto& a = w.km.params;
  double sum = 0.0;
  for (int k = 0; k <= j; ++k) {
    const double am = a[n - 1 - k];
    double denom = 1.0;
    for (int l = 0; l <= j; ++l) {
      if (l != k) denom *= am - a[n - 1 - l];
    }
    sum += std::exp(-0.5 * am * am + y * am) / denom;
  }
  return std::exp(-a[n - 1] * y) * sum / std::sqrt(2.0 * kPi);
}

double gue_phi_transition(const BiorthWork& w, int n1, int n2, double x, double y) {
  if (!(n1 < n2) || !(x < y)) return 0.0;
  const auto& a = w.km.params;
  double sum = 0.0;
  for (int m = n1; m < n2; ++m) {
    double denom = 1.0;
    for (int l = n1; l < n2; ++l) {
      if (l != m) denom *= a[m] - a[l];
    }
    sum += std::exp((y - x) * a[m]) / denom;
  }
  return std::exp(a[n1 - 1] * x - a[n2 - 1] * y) * sum;
}

// ---- multiple Laguerre pieces ----

double laguerre_psi(const BiorthWork& w, int n, int j, double x) {
  const auto& al = w.km.params;
  if (j >= 0) {
    std::vector<double> roots(al.begin() + (n - j), al.begin() + n);
    return std::exp(al[n - 1] * std::log(x) - x) * laguerre1_type_two(roots, x);
  }
  const int count = -j;
  std::vector<double> poles(al.begin() + n, al.begin() + n + count);
  // Mellin line left of every pole, plus the pole residues.
  const ContourPath line = vertical_line(-0.5, 30.0 + 4.0 * count, 3.0);
  auto f = [&](Complex z) {
    Complex denom(1.0, 0.0);
    for (double p : poles) denom *= z - p;
    return std::exp(log_gamma(z + 1.0) - (z + 1.0) * std::log(x)) / denom;
  };
  Complex val = contour_integrate(f, line, w.opt.rel_tol) / (2.0 * kPi * kI);
  double res_sum = 0.0;
  for (size_t m = 0; m < poles.size(); ++m) {
    double denom = 1.0;
    for (size_t l = 0; l < poles.size(); ++l) {
      if (l != m) denom *= poles[m] - poles[l];
    }
    res_sum += std::exp(std::lgamma(poles[m] + 1.0) - (poles[m] + 1.0) * std::log(x)) / denom;
  }
  return std::exp(al[n - 1] * std::log(x)) * (val.real() + res_sum);
}

double laguerre_phi(const BiorthWork& w, int n, int j, double y) {
  const auto& al = w.km.params;
  double sum = 0.0;
  for (int k = 0; k <= j; ++k) {
    const double am = al[n - 1 - k];
    double denom = 1.0;
    for (int l = 0; l <= j; ++l) {
      if (l != k) denom *= am - al[n - 1 - l];
    }
    sum += std::exp(am * std::log(y) - std::lgamma(am + 1.0)) / denom;
  }
  return std::exp(-al[n - 1] * std::log(y)) * sum;
}

double power_phi_transition(const BiorthWork& w, int n1, int n2, double x, double y) {
  if (!(n1 < n2) || !(x < y)) return 0.0;
  const auto& al = w.km.params;
  double sum = 0.0;
  for (int m = n1; m < n2; ++m) {
    double denom = 1.0;
    for (int l = n1; l < n2; ++l) {
      if (l != m) denom *= al[m] - al[l];
    }
    sum += std::exp(-(al[m] + 1.0) * std::log(x) + al[m] * std::log(y)) / denom;
  }
  return std::exp(al[n1 - 1] * std::log(x) - al[n2 - 1] * std::log(y)) * sum;
}

// ---- Jacobi-Pineiro pieces (all rational; exact residue sums) ----

double jp_psi(const BiorthWork& w, int n, int j, double x) {
  const auto& al = w.km.params;
  const int mp = w.km.m_prime;
  const int big_l = j + 1 + mp - n;  // number of negative-integer poles
  double sum = 0.0;
  const double lx = std::log(x);
  if (j >= 0) {
    for (int l = 1; l <= big_l; ++l) {
      double num = 1.0;
      for (int k = 1; k <= j; ++k) num *= -l - al[n - k];
      const double denom = ((l - 1) % 2 == 0 ? 1.0 : -1.0) *
                           std::exp(std::lgamma(l) + std::lgamma(big_l - l + 1.0));
      sum += std::exp((l - 1) * lx) * num / denom;
    }
  } else {
    const int count = -j;
    for (int l = 1; l <= big_l; ++l) {
      double den = ((l - 1) % 2 == 0 ? 1.0 : -1.0) *
                   std::exp(std::lgamma(l) + std::lgamma(big_l - l + 1.0));
      for (int k = 1; k <= count; ++k) den *= -l - al[n + k - 1];
      sum += std::exp((l - 1) * lx) / den;
    }
    for (int m = 0; m < count; ++m) {
      const double am = al[n + m];
      double den = 1.0;
      for (int l = 1; l <= big_l; ++l) den *= am + l;
      for (int k = 0; k < count; ++k) {
        if (k != m) den *= am - al[n + k];
      }
      sum += std::exp(-(am + 1.0) * lx) / den;
    }
  }
  return std::exp(al[n - 1] * lx) * sum;
}

double jp_phi(const BiorthWork& w, int n, int j, double y) {
  const auto& al = w.km.params;
  const int mp = w.km.m_prime;
  const double pref = j + 1 + mp - n + al[n - 1 - j];
  double sum = 0.0;
  for (int k = 0; k <= j; ++k) {
    const double am = al[n - 1 - k];
    double num = 1.0;
    for (int l = 1; l <= j + mp - n; ++l) num *= am + l;
    double denom = 1.0;
    for (int l = 0; l <= j; ++l) {
      if (l != k) denom *= am - al[n - 1 - l];
    }
    sum += std::exp(am * std::log(y)) * num / denom;
  }
  return pref * std::exp(-al[n - 1] * std::log(y)) * sum;
}

// ---- Wishart product form (valid for n1 >= n2) ----

double wishart_p(const std::vector<double>& a, int p, double x) {
  // monic polynomial from the order-(n+p) derivative at the origin
  const int n = static_cast<int>(a.size());
  const std::vector<double> coef = poly_from_roots(a);
  double prod_a = 1.0;
  for (double ak : a) prod_a *= ak;
  double sum = 0.0;
  for (int m = 0; m <= n; ++m) {
    const int fact = n + p - m;
    sum += coef[m] * std::pow(-x, static_cast<double>(fact)) / std::exp(std::lgamma(fact + 1.0));
  }
  const double sign = p % 2 == 0 ? 1.0 : -1.0;
  return sign * std::exp(std::lgamma(n + p + 1.0) - p * std::log(x)) / prod_a * sum;
}

// Normalized so that the defining unit pairing integral comes out +1; the
// residue sum alone produces the opposite sign (checked in closed form for
// one and two parameters).
double wishart_q(const std::vector<double>& a, int p, double y) {
  const int n = static_cast<int>(a.size());
  double prod_a = 1.0;
  for (double ak : a) prod_a *= ak;
  double sum = 0.0;
  for (int m = 0; m < n; ++m) {
    double denom = 1.0;
    for (int l = 0; l < n; ++l) {
      if (l != m) denom *= a[m] - a[l];
    }
    sum += std::exp(y * a[m] + (n + p - 1.0) * std::log(-a[m])) / denom;
  }
  const double parity = (n + p - 1) % 2 == 0 ? 1.0 : -1.0;  // (-a)^{n+p-1} sign
  const double sign = p % 2 == 0 ? 1.0 : -1.0;
  return -sign * parity * prod_a / std::exp(std::lgamma(static_cast<double>(n + p))) *
         std::exp(p * std::log(y)) * sum;
}

} // namespace

double kernel_conjugation_log(const KernelModel& km, int n, double x) {
  switch (km.kind) {
    case ModelKind::GueExt: return km.params[n - 1] * x;
    case ModelKind::Wishart: return 0.0;
    case ModelKind::MultipleLaguerre:
    case ModelKind::JacobiPineiro: return km.params[n - 1] * std::log(x);
  }
  return 0.0;
}

double kernel_via_biorthogonal_at(const KernelModel& km, int n1, int n2, double x, double y,
                                  const KernelOptions& opt) {
  if (n2 == 0) return 0.0;
  check_params(km, n1, n2, x, y, opt);
  BiorthWork w{km, opt};

  if (km.kind == ModelKind::Wishart) {
    if (n1 < n2) {
      throw ArgumentError("kernel_via_biorthogonal: Wishart product form needs n1 >= n2");
    }
    double sum = 0.0;
    for (int k = 1; k <= n2; ++k) {
      std::vector<double> pa(km.params.begin() + k, km.params.begin() + n1);
      std::reverse(pa.begin(), pa.end());  // a_{n1}, ..., a_{k+1}
      std::vector<double> qa(km.params.begin() + (k - 1), km.params.begin() + n2);
      std::reverse(qa.begin(), qa.end());  // a_{n2}, ..., a_k
      sum += wishart_p(pa, km.m - n1, x) * wishart_q(qa, km.m - n2, y);
    }
    const double sign = (n2 - n1) % 2 == 0 ? 1.0 : -1.0;
    return sign * std::exp((km.m - n1) * std::log(x) - (km.m - n2) * std::log(y)) * sum;
  }

  double phi_term = 0.0;
  double sum = 0.0;
  switch (km.kind) {
    case ModelKind::GueExt:
      phi_term = gue_phi_transition(w, n1, n2, x, y);
      for (int k = 1; k <= n2; ++k) {
        sum += gue_psi(w, n1, n1 - k, x) * gue_phi(w, n2, n2 - k, y);
      }
      break;
    case ModelKind::MultipleLaguerre:
      phi_term = power_phi_transition(w, n1, n2, x, y);
      for (int k = 1; k <= n2; ++k) {
        sum += laguerre_psi(w, n1, n1 - k, x) * laguerre_phi(w, n2, n2 - k, y);
      }
      break;
    case ModelKind::JacobiPineiro:
      phi_term = power_phi_transition(w, n1, n2, x, y);
      for (int k = 1; k <= n2; ++k) {
        sum += jp_psi(w, n1, n1 - k, x) * jp_phi(w, n2, n2 - k, y);
      }
      break;
    default:
      break;
  }
  return -phi_term + sum;
}

double kernel_via_biorthogonal(const KernelRequest& req, const KernelOptions& opt) {
  req.model.validate();
  KernelModel km = kernel_model_from_spec(req.model);
  const int levels = std::max(req.n1, req.n2);
  std::vector<double> used(km.params.begin(), km.params.begin() + levels);
  if (levels == 1 || min_gap(used) >= opt.min_param_gap) {
    return kernel_via_biorthogonal_at(km, req.n1, req.n2, req.x, req.y, opt);
  }
  const double eps = opt.min_param_gap;
  const double direction = km.kind == ModelKind::Wishart ? -1.0 : 1.0;
  auto eval = [&](double e) {
    KernelModel pert = km;
    for (size_t k = 0; k < pert.params.size(); ++k) {
      pert.params[k] += direction * e * static_cast<double>(k + 1);
    }
    return kernel_via_biorthogonal_at(pert, req.n1, req.n2, req.x, req.y, opt);
  };
  return 2.0 * eval(0.5 * eps) - eval(eps);
}

double classical_kernel_oracle(int n, double x, double y) {
  // monic polynomials orthogonal for the unit-variance Gaussian weight
  double px0 = 1.0, px1 = x, py0 = 1.0, py1 = y;
  double norm = std::sqrt(2.0 * kPi);  // squared norm of the degree-0 polynomial
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double pk_x = k == 0 ? px0 : px1;
    const double pk_y = k == 0 ? py0 : py1;
    sum += pk_x * pk_y / norm;
    // advance the three-term recurrence p_{k+1} = x p_k - k p_{k-1}
    if (k >= 1) {
      const double nx = x * px1 - k * px0;
      const double ny = y * py1 - k * py0;
      px0 = px1;
      px1 = nx;
      py0 = py1;
      py1 = ny;
    }
    norm *= k + 1.0;
  }
  return sum * std::exp(-0.25 * (x * x + y * y));
}

std::vector<double> level_density(const ModelSpec& spec, int n,
                                  const std::vector<double>& xs, const KernelOptions& opt) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (!spec.in_range(x)) throw RangeError("level_density: point outside the model range");
    KernelRequest req{spec, n, n, x, x};
    out.push_back(extended_kernel(req, opt));
  }
  return out;
}

} // namespace minorlab
