#include "minorlab/mops.hpp"

#include <algorithm>
#include <cmath>

#include "minorlab/contour.hpp"

namespace minorlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr Complex kI(0.0, 1.0);

double min_gap(const std::vector<double>& v) {
  double g = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < v.size(); ++i) {
    for (size_t j = i + 1; j < v.size(); ++j) g = std::min(g, std::abs(v[i] - v[j]));
  }
  return g;
}

void validate_params(MopFamily family, const std::vector<double>& params, double extra) {
  if (params.empty()) throw ArgumentError("mop_eval: need at least one parameter");
  if (params.size() > 1 && min_gap(params) < 1e-3) {
    throw ParameterDegeneracyError("mop_eval: parameters closer than the safe gap");
  }
  switch (family) {
    case MopFamily::Laguerre2II:
    case MopFamily::Laguerre2I: {
      for (double a : params) {
        if (!(a < 0.0)) throw ArgumentError("mop_eval: second-kind parameters must be negative");
      }
      const double p = extra;
      if (!(p >= 0.0) || std::abs(p - std::round(p)) > 1e-9) {
        throw ArgumentError("mop_eval: second-kind exponent must be a nonnegative integer");
      }
      break;
    }
    case MopFamily::Laguerre1II:
    case MopFamily::Laguerre1I:
      for (double a : params) {
        if (!(a > -1.0)) throw ArgumentError("mop_eval: first-kind parameters must exceed -1");
      }
      break;
    case MopFamily::JacobiPineiroII:
    case MopFamily::JacobiPineiroI:
      for (double a : params) {
        if (!(a > -1.0)) throw ArgumentError("mop_eval: parameters must exceed -1");
      }
      if (!(extra > -1.0)) throw ArgumentError("mop_eval: beta must exceed -1");
      break;
    default:
      break;
  }
}

ContourPath stadium(double lo, double hi, double rho) {
  ContourPath p;
  const int top = std::max(2, static_cast<int>((hi - lo) * 4.0) + 1);
  p.segments.push_back(ContourPath::arc(Complex(hi, 0.0), rho, rho, -0.5 * kPi, 0.5 * kPi, 4));
  p.segments.push_back(ContourPath::line(Complex(hi, rho), Complex(lo, rho), top));
  p.segments.push_back(ContourPath::arc(Complex(lo, 0.0), rho, rho, 0.5 * kPi, 1.5 * kPi, 4));
  p.segments.push_back(ContourPath::line(Complex(lo, -rho), Complex(hi, -rho), top));
  return p;
}

ContourPath flat_ellipse(double lo, double hi, double margin_x, double ry) {
  ContourPath p;
  const double cx = 0.5 * (lo + hi);
  const double rx = 0.5 * (hi - lo) + margin_x;
  p.segments.push_back(
      ContourPath::ellipse(Complex(cx, 0.0), rx, ry, std::max(16, static_cast<int>(8.0 * rx))));
  return p;
}

ContourPath vertical_line(double c, double t_max, double fine) {
  ContourPath p;
  const double f = std::min(fine, t_max);
  if (f < t_max) {
    p.segments.push_back(ContourPath::line(Complex(c, -t_max), Complex(c, -f),
                                           std::max(2, static_cast<int>((t_max - f) / 2.0) + 1)));
  }
  p.segments.push_back(
      ContourPath::line(Complex(c, -f), Complex(c, f), std::max(8, static_cast<int>(4.0 * f))));
  if (f < t_max) {
    p.segments.push_back(ContourPath::line(Complex(c, f), Complex(c, t_max),
                                           std::max(2, static_cast<int>((t_max - f) / 2.0) + 1)));
  }
  return p;
}

// Hankel strip of half-height h: bottom ray in from -t_left, cap at c_right,
// top ray back out. Ray panels grow geometrically away from the cap.
ContourPath hankel_strip(double t_left, double c_right, double h) {
  ContourPath p;
  auto graded_ray = [&](Complex from, Complex to, bool fine_at_to) {
    // subdivide [from,to] into geometric pieces, finest near the cap
    const double len = std::abs(to - from);
    std::vector<double> cuts{0.0};
    double step = std::min(2.0, len);
    double pos = step;
    while (pos < len) {
      cuts.push_back(pos);
      step *= 2.0;
      pos += step;
    }
    cuts.push_back(len);
    const Complex dir = (to - from) / len;
    if (fine_at_to) {
      for (size_t k = cuts.size() - 1; k >= 1; --k) {
        p.segments.push_back(ContourPath::line(to - cuts[k] * dir, to - cuts[k - 1] * dir, 3));
      }
    } else {
      for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        p.segments.push_back(ContourPath::line(from + cuts[k] * dir, from + cuts[k + 1] * dir, 3));
      }
    }
  };
  graded_ray(Complex(-t_left, -h), Complex(c_right, -h), true);
  p.segments.push_back(ContourPath::line(Complex(c_right, -h), Complex(c_right, h), 4));
  graded_ray(Complex(c_right, h), Complex(-t_left, h), false);
  return p;
}

// monic polynomial coefficient helpers (shared with the kernel module logic)
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

std::vector<double> rising_basis_coeffs(const std::vector<double>& roots) {
  std::vector<double> p = poly_from_roots(roots);
  const int n = static_cast<int>(roots.size());
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

// ---------------------------------------------------------------------------
// family evaluations
// ---------------------------------------------------------------------------

double hermite_type_two(const std::vector<double>& a, double x, double scale, double rel_tol) {
  const ContourPath line = vertical_line(x, 12.0 * scale, 4.0);
  auto f = [&](Complex s) {
    Complex prod(1.0, 0.0);
    for (double ak : a) prod *= s - ak;
    return std::exp(0.5 * (s - x) * (s - x)) * prod;
  };
  const Complex v = contour_integrate(f, line, rel_tol) / (std::sqrt(2.0 * kPi) * kI);
  return v.real();
}

double hermite_type_one(const std::vector<double>& a, double x, double scale, double rel_tol) {
  const auto [lo, hi] = std::minmax_element(a.begin(), a.end());
  const ContourPath gamma = stadium(*lo, *hi, 0.35 * scale);
  auto f = [&](Complex t) {
    Complex prod(1.0, 0.0);
    for (double ak : a) prod *= t - ak;
    return std::exp(-0.5 * (t - x) * (t - x)) / prod;
  };
  const Complex v =
      contour_integrate(f, gamma, rel_tol) / (std::sqrt(2.0 * kPi) * 2.0 * kPi * kI);
  return v.real();
}

double laguerre2_type_two(const std::vector<double>& a, int p, double x, double scale,
                          double rel_tol) {
  const int n = static_cast<int>(a.size());
  const double d = -*std::max_element(a.begin(), a.end());
  const double radius = std::min(d / 3.0, (n + p + 4.0) / (1.0 + x)) * scale;
  const ContourPath sigma = ContourPath::circle(Complex(0.0, 0.0), radius, 16);
  auto f = [&](Complex s) {
    Complex prod(1.0, 0.0);
    for (double ak : a) prod *= s - ak;
    return std::exp(-x * s - (n + p + 1.0) * std::log(s)) * prod;
  };
  const Complex v = contour_integrate(f, sigma, rel_tol) / (2.0 * kPi * kI);
  double prod_a = 1.0;
  for (double ak : a) prod_a *= ak;
  const double sign = p % 2 == 0 ? 1.0 : -1.0;
  return sign * std::exp(std::lgamma(n + p + 1.0) - p * std::log(x)) / prod_a * v.real();
}

double laguerre2_type_one(const std::vector<double>& a, int p, double y, double scale,
                          double rel_tol) {
  const int n = static_cast<int>(a.size());
  const auto [lo, hi] = std::minmax_element(a.begin(), a.end());
  const double d = -*hi;
  const ContourPath gamma = stadium(*lo, *hi, std::min(0.35, 0.25 * d) * scale);
  auto f = [&](Complex t) {
    Complex prod(1.0, 0.0);
    for (double ak : a) prod *= t - ak;
    return std::exp(y * t + (n + p - 1.0) * std::log(t)) / prod;
  };
  const Complex v = contour_integrate(f, gamma, rel_tol) / (2.0 * kPi * kI);
  double prod_a = 1.0;
  for (double ak : a) prod_a *= ak;
  const double sign = p % 2 == 0 ? 1.0 : -1.0;
  // sign normalized so the defining unit pairing is +1
  return -sign * prod_a / std::exp(std::lgamma(static_cast<double>(n + p))) *
         std::exp(p * std::log(y)) * v.real();
}

double laguerre1_type_two(const std::vector<double>& alpha, double x) {
  // exact residue resummation of the Hankel integral
  return poly_eval(rising_basis_coeffs(alpha), x);
}

double laguerre1_type_one(const std::vector<double>& alpha, double x, double scale,
                          double rel_tol) {
  const auto [lo, hi] = std::minmax_element(alpha.begin(), alpha.end());
  const ContourPath gamma = flat_ellipse(*lo, *hi, 0.3 * scale, 0.22 * scale);
  auto f = [&](Complex z) {
    Complex prod(1.0, 0.0);
    for (double ak : alpha) prod *= z - ak;
    return std::exp(z * std::log(x) - log_gamma(z + 1.0)) / prod;
  };
  const Complex v = contour_integrate(f, gamma, rel_tol) / (2.0 * kPi * kI);
  return std::exp(-x) * v.real();
}

double jp_type_two(const std::vector<double>& alpha, double beta, double x, double scale,
                   double rel_tol) {
  const int n = static_cast<int>(alpha.size());
  double value;
  if (std::abs(beta - std::round(beta)) < 1e-9) {
    // finitely many poles: exact residue sum
    const int big_l = n + 1 + static_cast<int>(std::round(beta));
    double sum = 0.0;
    for (int j = 1; j <= big_l; ++j) {
      double num = 1.0;
      for (double ak : alpha) num *= -j - ak;
      const double denom = ((j - 1) % 2 == 0 ? 1.0 : -1.0) *
                           std::exp(std::lgamma(j) + std::lgamma(big_l - j + 1.0));
      sum += std::exp((j - 1) * std::log(x)) * num / denom;
    }
    value = sum;
  } else {
    const double amax = *std::max_element(alpha.begin(), alpha.end());
    // truncation where x^q q^{n - (n+1+beta)} drops below 1e-23 relative
    double t_left = 8.0 + amax;
    while (t_left * std::log(x) - (1.0 + beta) * std::log(t_left) > -53.0 && t_left < 1e7) {
      t_left *= 1.7;
    }
    const ContourPath sigma = hankel_strip(t_left, -0.25, 0.5 * scale);
    auto f = [&](Complex z) {
      Complex prod(1.0, 0.0);
      for (double ak : alpha) prod *= z - ak;
      return std::exp(-(z + 1.0) * std::log(x) + log_gamma(z + 1.0) -
                      log_gamma(z + (n + 2.0 + beta))) *
             prod;
    };
    value = (contour_integrate(f, sigma, rel_tol) / (2.0 * kPi * kI)).real();
  }
  double denom = 1.0;
  for (double ak : alpha) denom *= n + 1.0 + beta + ak;
  return std::exp(std::lgamma(n + 1.0 + beta) - beta * std::log1p(-x)) / denom * value;
}

double jp_type_one(const std::vector<double>& alpha, double beta, double x, double scale,
                   double rel_tol) {
  const int n = static_cast<int>(alpha.size());
  const auto [lo, hi] = std::minmax_element(alpha.begin(), alpha.end());
  const ContourPath gamma = flat_ellipse(*lo, *hi, 0.3 * scale, 0.22 * scale);
  auto f = [&](Complex z) {
    Complex prod(1.0, 0.0);
    for (double ak : alpha) prod *= z - ak;
    return std::exp(z * std::log(x) + log_gamma(z + (n + beta)) - log_gamma(z + 1.0)) / prod;
  };
  const Complex v = contour_integrate(f, gamma, rel_tol) / (2.0 * kPi * kI);
  double num = 1.0;
  for (double ak : alpha) num *= n + beta + ak;
  return num / std::exp(std::lgamma(n + beta)) * std::exp(beta * std::log1p(-x)) * v.real();
}

} // namespace

bool mop_is_type_two(MopFamily family) {
  switch (family) {
    case MopFamily::HermiteII:
    case MopFamily::Laguerre2II:
    case MopFamily::Laguerre1II:
    case MopFamily::JacobiPineiroII:
      return true;
    default:
      return false;
  }
}

double mop_eval(MopFamily family, const std::vector<double>& params, double extra, double x,
                double contour_scale) {
  validate_params(family, params, extra);
  const double rel_tol = 1e-9;
  switch (family) {
    case MopFamily::HermiteII:
      return hermite_type_two(params, x, contour_scale, rel_tol);
    case MopFamily::HermiteI:
      return hermite_type_one(params, x, contour_scale, rel_tol);
    case MopFamily::Laguerre2II:
      if (!(x > 0.0)) throw RangeError("mop_eval: x must be positive");
      return laguerre2_type_two(params, static_cast<int>(std::round(extra)), x, contour_scale,
                                rel_tol);
    case MopFamily::Laguerre2I:
      if (!(x > 0.0)) throw RangeError("mop_eval: x must be positive");
      return laguerre2_type_one(params, static_cast<int>(std::round(extra)), x, contour_scale,
                                rel_tol);
    case MopFamily::Laguerre1II:
      return laguerre1_type_two(params, x);
    case MopFamily::Laguerre1I:
      if (!(x > 0.0)) throw RangeError("mop_eval: x must be positive");
      return laguerre1_type_one(params, x, contour_scale, rel_tol);
    case MopFamily::JacobiPineiroII:
      if (!(x > 0.0 && x < 1.0)) throw RangeError("mop_eval: x must be in (0,1)");
      return jp_type_two(params, extra, x, contour_scale, rel_tol);
    case MopFamily::JacobiPineiroI:
      if (!(x > 0.0 && x < 1.0)) throw RangeError("mop_eval: x must be in (0,1)");
      return jp_type_one(params, extra, x, contour_scale, rel_tol);
  }
  throw ArgumentError("mop_eval: unknown family");
}

namespace {

struct WeightedDomain {
  QuadratureRule rule;
};

QuadratureRule composite_rule(double a, double b, int panels, int pts, bool grade_left,
                              bool grade_right) {
  QuadratureRule out;
  out.a = a;
  out.b = b;
  std::vector<double> cuts{a};
  const double len = b - a;
  if (grade_left) {
    for (int k = 40; k >= 1; --k) cuts.push_back(a + len * std::pow(0.5, k + 1));
  }
  const double mid_start = cuts.back();
  const double mid_end = grade_right ? a + len * 0.5 : b;
  for (int k = 1; k <= panels; ++k) {
    cuts.push_back(mid_start + (mid_end - mid_start) * k / panels);
  }
  if (grade_right) {
    for (int k = 2; k <= 40; ++k) cuts.push_back(b - len * std::pow(0.5, k + 1));
    cuts.push_back(b);
  }
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (!(cuts[k + 1] > cuts[k])) continue;
    const QuadratureRule r = gauss_legendre(pts, cuts[k], cuts[k + 1]);
    out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
    out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
  }
  return out;
}

// weight of the k-th defining measure of the system
double system_weight(MopFamily family, const std::vector<double>& params, double extra, int k,
                     double x) {
  switch (family) {
    case MopFamily::HermiteII:
    case MopFamily::HermiteI:
      return std::exp(-0.5 * x * x + params[k] * x);
    case MopFamily::Laguerre2II:
    case MopFamily::Laguerre2I:
      return std::exp(extra * std::log(x) + params[k] * x);
    case MopFamily::Laguerre1II:
    case MopFamily::Laguerre1I:
      return std::exp(params[k] * std::log(x) - x);
    case MopFamily::JacobiPineiroII:
    case MopFamily::JacobiPineiroI:
      return std::exp(params[k] * std::log(x) + extra * std::log1p(-x));
  }
  return 0.0;
}

QuadratureRule system_domain(MopFamily family, const std::vector<double>& params, double extra) {
  const int n = static_cast<int>(params.size());
  switch (family) {
    case MopFamily::HermiteII:
    case MopFamily::HermiteI: {
      const double lo = *std::min_element(params.begin(), params.end()) - 11.0;
      const double hi = *std::max_element(params.begin(), params.end()) + 11.0;
      return composite_rule(lo, hi, 36, 16, false, false);
    }
    case MopFamily::Laguerre2II:
    case MopFamily::Laguerre2I: {
      const double dmin = -*std::max_element(params.begin(), params.end());
      return composite_rule(0.0, (n + extra + 48.0) / dmin, 48, 16, false, false);
    }
    case MopFamily::Laguerre1II:
    case MopFamily::Laguerre1I: {
      const double amax = *std::max_element(params.begin(), params.end());
      return composite_rule(0.0, amax + 60.0, 48, 16, true, false);
    }
    case MopFamily::JacobiPineiroII:
    case MopFamily::JacobiPineiroI:
      return composite_rule(0.0, 1.0, 24, 16, true, true);
  }
  return {};
}

MopFamily type_two_partner(MopFamily family) {
  switch (family) {
    case MopFamily::HermiteI: return MopFamily::HermiteII;
    case MopFamily::Laguerre2I: return MopFamily::Laguerre2II;
    case MopFamily::Laguerre1I: return MopFamily::Laguerre1II;
    case MopFamily::JacobiPineiroI: return MopFamily::JacobiPineiroII;
    default: return family;
  }
}

} // namespace

double mop_orthogonality_check(MopFamily family, const std::vector<double>& params,
                               double extra) {
  validate_params(family, params, extra);
  const int n = static_cast<int>(params.size());
  const QuadratureRule rule = system_domain(family, params, extra);

  std::vector<double> values(rule.nodes.size());
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    values[i] = mop_eval(family, params, extra, rule.nodes[i]);
  }

  double worst = 0.0;
  if (mop_is_type_two(family)) {
    // integral of P against every defining weight must vanish
    for (int k = 0; k < n; ++k) {
      double raw = 0.0, norm2 = 0.0, mass = 0.0;
      for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const double w = system_weight(family, params, extra, k, rule.nodes[i]);
        raw += rule.weights[i] * values[i] * w;
        norm2 += rule.weights[i] * values[i] * values[i] * w;
        mass += rule.weights[i] * w;
      }
      worst = std::max(worst, std::abs(raw) / std::sqrt(std::max(norm2 * mass, 1e-300)));
    }
    return worst;
  }

  // type I: vanishing moments and the unit pairing
  for (int k = 0; k <= n - 2; ++k) {
    double raw = 0.0, scale = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      const double xk = std::pow(rule.nodes[i], k);
      raw += rule.weights[i] * values[i] * xk;
      scale += rule.weights[i] * std::abs(values[i]) * std::abs(xk);
    }
    worst = std::max(worst, std::abs(raw) / std::max(scale, 1e-300));
  }
  if (n >= 1) {
    std::vector<double> head(params.begin(), params.end() - 1);
    double pairing = 0.0;
    const MopFamily partner = type_two_partner(family);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      const double p = head.empty() ? 1.0 : mop_eval(partner, head, extra, rule.nodes[i]);
      pairing += rule.weights[i] * values[i] * p;
    }
    worst = std::max(worst, std::abs(pairing - 1.0));
  }
  return worst;
}

} // namespace minorlab
