#include "minorlab/pearcey.hpp"

#include <algorithm>
#include <cmath>

#include "minorlab/contour.hpp"
#include "minorlab/ensembles.hpp"

namespace minorlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr Complex kI(0.0, 1.0);

double geometry_a_of_r(double r) {
  const double q = 1.0 + r * r;
  const double cube = 1.0 + r * r * r;
  return q * q * (r * r - 2.0 * r * r * r - 1.0) / (4.0 * cube * cube);
}

double solve_r0() {
  // root of 2 r^3 - r^2 + 1 in (-1, 0)
  double lo = -0.9, hi = -0.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = 2.0 * mid * mid * mid - mid * mid + 1.0;
    (v > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace

PearceyGeometry solve_geometry(double a) {
  if (!(a > 0.3436)) {
    throw OutOfRangeError("solve_geometry: parameter below the solvable window");
  }
  if (!(a < 1e6)) {
    throw OutOfRangeError("solve_geometry: parameter too large");
  }
  static const double r0 = solve_r0();
  // a(r) decreases from +inf to 0 as r goes from -1 to r0
  double lo = -1.0 + 1e-9, hi = r0 - 1e-12;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (geometry_a_of_r(mid) > a ? lo : hi) = mid;
  }
  PearceyGeometry g;
  g.r = 0.5 * (lo + hi);
  const double r = g.r;
  const double q = 1.0 + r * r;
  const double cube = 1.0 + r * r * r;
  g.x0 = q * q * q / (4.0 * cube * cube);
  const double x0_minus_a = q * q / (2.0 * cube);
  const double x0_minus_b = q * q / (2.0 * r * cube);
  g.a = g.x0 - x0_minus_a;
  g.b = g.x0 - x0_minus_b;
  g.c = g.x0 * std::exp(1.0 / x0_minus_a + 1.0 / x0_minus_b);
  g.f4 = 2.0 / (g.x0 * g.x0 * g.x0) - 6.0 / std::pow(x0_minus_a, 4.0) -
         6.0 / std::pow(x0_minus_b, 4.0);
  g.c3 = std::pow(std::abs(g.f4) / 6.0, 0.25);
  g.c2 = std::exp(1.0 / (g.b - g.x0));
  g.c1 = (g.b - g.x0) * (g.b - g.x0) * g.c3 * g.c3;
  return g;
}

PhaseDerivatives f_and_derivs(Complex z, const PearceyGeometry& geom) {
  if (z.imag() == 0.0 && z.real() <= 0.0) {
    throw BranchError("f_and_derivs: on the branch cut");
  }
  PhaseDerivatives d;
  const Complex za = z - geom.a;
  const Complex zb = z - geom.b;
  d.f = z * (std::log(z) - std::log(geom.c) - 1.0) + std::log(za) + std::log(zb);
  d.f1 = std::log(z) - std::log(geom.c) + 1.0 / za + 1.0 / zb;
  d.f2 = 1.0 / z - 1.0 / (za * za) - 1.0 / (zb * zb);
  d.f3 = -1.0 / (z * z) + 2.0 / (za * za * za) + 2.0 / (zb * zb * zb);
  return d;
}

// ---------------------------------------------------------------------------
// limit kernel
// ---------------------------------------------------------------------------

namespace {

double ray_truncation(double quad_coef, double lin_coef) {
  // smallest radius with rho^4/4 - quad rho^2/2 - lin rho > 50
  double rho = 4.0;
  while (0.25 * std::pow(rho, 4.0) - 0.5 * quad_coef * rho * rho - lin_coef * rho < 50.0) {
    rho *= 1.3;
  }
  return rho;
}

struct PearceyContours {
  ContourQuadrature z;  // steep-descent X-contours through -+1/sqrt(2)
  ContourQuadrature w;  // vertical line through 0
};

PearceyContours build_pearcey_contours(double s, double t, double u_abs, double v_abs,
                                       double truncation_scale) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double rz = ray_truncation(std::abs(s), u_abs) * truncation_scale;
  const double rw = ray_truncation(std::abs(t), v_abs) * truncation_scale;

  ContourPath zpath;
  const int ray_panels = std::max(8, static_cast<int>(rz * 2.0));
  const Complex va(-inv_sqrt2, 0.0);
  const Complex dir_ul = Complex(-inv_sqrt2, inv_sqrt2);
  const Complex dir_ll = Complex(-inv_sqrt2, -inv_sqrt2);
  // left piece: in from lower-left, vertical joint, out to upper-left
  zpath.segments.push_back(
      ContourPath::line(va + Complex(0.0, -inv_sqrt2) + rz * dir_ll,
                        va + Complex(0.0, -inv_sqrt2), ray_panels));
  zpath.segments.push_back(
      ContourPath::line(va + Complex(0.0, -inv_sqrt2), va + Complex(0.0, inv_sqrt2), 4));
  zpath.segments.push_back(ContourPath::line(
      va + Complex(0.0, inv_sqrt2), va + Complex(0.0, inv_sqrt2) + rz * dir_ul, ray_panels));
  // right piece: in from upper-right, vertical joint down, out to lower-right
  const Complex vb(inv_sqrt2, 0.0);
  const Complex dir_ur = Complex(inv_sqrt2, inv_sqrt2);
  const Complex dir_lr = Complex(inv_sqrt2, -inv_sqrt2);
  zpath.segments.push_back(
      ContourPath::line(vb + Complex(0.0, inv_sqrt2) + rz * dir_ur,
                        vb + Complex(0.0, inv_sqrt2), ray_panels));
  zpath.segments.push_back(
      ContourPath::line(vb + Complex(0.0, inv_sqrt2), vb + Complex(0.0, -inv_sqrt2), 4));
  zpath.segments.push_back(ContourPath::line(
      vb + Complex(0.0, -inv_sqrt2), vb + Complex(0.0, -inv_sqrt2) + rz * dir_lr, ray_panels));
  zpath.points_per_panel = 16;

  ContourPath wpath;
  wpath.segments.push_back(ContourPath::line(Complex(0.0, -rw), Complex(0.0, rw),
                                             std::max(12, static_cast<int>(rw * 3.0))));
  wpath.points_per_panel = 16;

  PearceyContours pc;
  pc.z = discretize(zpath, 0);
  pc.w = discretize(wpath, 0);
  return pc;
}

std::vector<std::vector<double>> pearcey_grid_impl(double s, double t,
                                                   const std::vector<double>& us,
                                                   const std::vector<double>& vs,
                                                   double truncation_scale) {
  double u_abs = 1.0, v_abs = 1.0;
  for (double u : us) u_abs = std::max(u_abs, std::abs(u));
  for (double v : vs) v_abs = std::max(v_abs, std::abs(v));
  const PearceyContours pc = build_pearcey_contours(s, t, u_abs, v_abs, truncation_scale);
  const size_t nz = pc.z.nodes.size(), nw = pc.w.nodes.size();

  // integrand: exp(z^4/4 - s z^2/2 + u z) * exp(-w^4/4 + t w^2/2 - v w) / (w - z)
  std::vector<Complex> zbase(nz), wbase(nw);
  for (size_t i = 0; i < nz; ++i) {
    const Complex z = pc.z.nodes[i];
    zbase[i] = pc.z.weights[i] * std::exp(0.25 * z * z * z * z - 0.5 * s * z * z);
  }
  for (size_t j = 0; j < nw; ++j) {
    const Complex w = pc.w.nodes[j];
    wbase[j] = pc.w.weights[j] * std::exp(-0.25 * w * w * w * w + 0.5 * t * w * w);
  }

  // B_j(v), then C_{i,v} = sum_j B_j / (w_j - z_i), then A_i(u) C
  std::vector<std::vector<Complex>> c_iv(nz, std::vector<Complex>(vs.size()));
  {
    std::vector<Complex> bj(nw);
    for (size_t vidx = 0; vidx < vs.size(); ++vidx) {
      for (size_t j = 0; j < nw; ++j) bj[j] = wbase[j] * std::exp(-vs[vidx] * pc.w.nodes[j]);
      for (size_t i = 0; i < nz; ++i) {
        Complex acc(0.0, 0.0);
        for (size_t j = 0; j < nw; ++j) acc += bj[j] / (pc.w.nodes[j] - pc.z.nodes[i]);
        c_iv[i][vidx] = acc;
      }
    }
  }

  const Complex norm = 1.0 / ((2.0 * kPi * kI) * (2.0 * kPi * kI));
  std::vector<std::vector<double>> out(us.size(), std::vector<double>(vs.size(), 0.0));
  for (size_t uidx = 0; uidx < us.size(); ++uidx) {
    for (size_t vidx = 0; vidx < vs.size(); ++vidx) {
      Complex acc(0.0, 0.0);
      for (size_t i = 0; i < nz; ++i) {
        acc += zbase[i] * std::exp(us[uidx] * pc.z.nodes[i]) * c_iv[i][vidx];
      }
      Complex val = acc * norm;
      if (t > s) {
        val -= std::exp(-0.5 * (vs[vidx] - us[uidx]) * (vs[vidx] - us[uidx]) / (t - s)) /
               std::sqrt(2.0 * kPi * (t - s));
      }
      if (std::abs(val.imag()) > 1e-8 * std::max(1.0, std::abs(val.real()))) {
        throw NonConvergenceError("pearcey_kernel: imaginary residue too large");
      }
      out[uidx][vidx] = val.real();
    }
  }
  return out;
}

} // namespace

std::vector<std::vector<double>> pearcey_kernel_grid(double s, double t,
                                                     const std::vector<double>& us,
                                                     const std::vector<double>& vs,
                                                     double truncation_scale) {
  return pearcey_grid_impl(s, t, us, vs, truncation_scale);
}

double pearcey_kernel(double s, double u, double t, double v, double truncation_scale) {
  return pearcey_grid_impl(s, t, {u}, {v}, truncation_scale)[0][0];
}

// ---------------------------------------------------------------------------
// finite-n kernel under the cusp scaling
// ---------------------------------------------------------------------------

namespace {

struct FiniteScaling {
  int n1 = 0, n2 = 0;
  double x = 0.0, y = 0.0;
};

FiniteScaling apply_scaling(int n, const PearceyGeometry& g, double s, double u, double t,
                            double v) {
  FiniteScaling fs;
  const double rn = std::sqrt(static_cast<double>(n));
  fs.n1 = static_cast<int>(std::floor(n * (2.0 + g.c1 * s / rn)));
  fs.n2 = static_cast<int>(std::floor(n * (2.0 + g.c1 * t / rn)));
  const double n34 = std::pow(static_cast<double>(n), 0.75);
  fs.x = g.c * n * std::pow(g.c2, -g.c1 * s / rn) * (1.0 - g.c3 * u / n34);
  fs.y = g.c * n * std::pow(g.c2, -g.c1 * t / rn) * (1.0 - g.c3 * v / n34);
  return fs;
}

// Re F along the imaginary axis, used to choose the strip height.
double re_f_imag_axis(const PearceyGeometry& g, double tt) {
  return -0.5 * kPi * tt + 0.5 * std::log(tt * tt + g.a * g.a) +
         0.5 * std::log(tt * tt + g.b * g.b);
}

double re_f_at_x0(const PearceyGeometry& g) {
  return g.x0 * (std::log(g.x0) - std::log(g.c) - 1.0) + std::log(g.x0 - g.a) +
         std::log(g.b - g.x0);
}

// z-side exponent of the integrand (w-side with n2 in place of n1 and no +1).
Complex finite_exponent(Complex z, double coord, int n, int n_level, double na_f, double nb_f,
                        bool z_side) {
  Complex g = log_gamma(z + 1.0);
  g += static_cast<double>(n) * std::log(z - na_f);
  g += static_cast<double>(n_level - n) * std::log(z - nb_f);
  g -= (z_side ? z + 1.0 : z) * std::log(coord);
  return g;
}

} // namespace

double rescaled_finite_kernel(int n, const PearceyGeometry& g, double s, double u, double t,
                              double v) {
  if (n < 20) throw ArgumentError("rescaled_finite_kernel: n too small");
  const FiniteScaling fs = apply_scaling(n, g, s, u, t, v);
  if (fs.n1 <= n || fs.n2 <= n) {
    throw ArgumentError("rescaled_finite_kernel: scaled levels must exceed the switch level");
  }
  const double na_f = std::floor(n * g.a);
  const double nb_f = std::floor(n * g.b);
  const double fx0 = re_f_at_x0(g);

  // strip height: where Re F on the imaginary axis falls below Re F(x0)
  double sig_lo = 0.05, sig_hi = 400.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (sig_lo + sig_hi);
    (re_f_imag_axis(g, mid) > fx0 ? sig_lo : sig_hi) = mid;
  }
  const double sigma_h = 0.5 * (sig_lo + sig_hi) + 0.75;
  const double h = sigma_h * n;

  // left truncation of the strip rays: walk until Re F drops well below
  double q_left = g.x0 + 1.0;
  while (true) {
    const Complex z(-q_left, sigma_h);
    const double refz =
        (z * (std::log(z) - std::log(g.c) - 1.0) + std::log(z - g.a) + std::log(z - g.b)).real();
    if (refz < fx0 - 60.0 / n || q_left > 1e5) break;
    q_left *= 1.35;
  }

  const double x0n = g.x0 * n;
  const double delta = std::pow(static_cast<double>(n), 0.75) / (g.c3 * std::sqrt(2.0));
  const double fine = 2.5 * delta;

  // strip contour (z): up the vertical through x0n, rays back to the left
  ContourPath zpath;
  {
    const double t_left = q_left * n;
    const int ray_panels = std::max(10, static_cast<int>(std::log2(t_left / fine) * 3.0) + 6);
    zpath.segments.push_back(ContourPath::line(Complex(-t_left, -h), Complex(x0n, -h), ray_panels));
    // graded vertical: fine near the real axis
    zpath.segments.push_back(
        ContourPath::line(Complex(x0n, -h), Complex(x0n, -fine),
                          std::max(4, static_cast<int>(std::log2(h / fine) * 2.0))));
    zpath.segments.push_back(
        ContourPath::line(Complex(x0n, -fine), Complex(x0n, fine), 16));
    zpath.segments.push_back(
        ContourPath::line(Complex(x0n, fine), Complex(x0n, h),
                          std::max(4, static_cast<int>(std::log2(h / fine) * 2.0))));
    zpath.segments.push_back(ContourPath::line(Complex(x0n, h), Complex(-t_left, h), ray_panels));
    zpath.points_per_panel = 16;
  }

  // circles (w) around the two parameter clusters
  ContourPath wpath;
  {
    const double ra = std::min(na_f - 2.0, (g.x0 - g.a) * n - delta);
    const double rb = (g.b - g.x0) * n - delta;
    wpath.segments.push_back(ContourPath::ellipse(Complex(na_f, 0.0), ra, ra,
                                                  std::max(48, static_cast<int>(ra / 4.0))));
    wpath.segments.push_back(ContourPath::ellipse(Complex(nb_f, 0.0), rb, rb,
                                                  std::max(48, static_cast<int>(rb / 4.0))));
    wpath.points_per_panel = 16;
  }

  // conjugation and Jacobian folded into the normalization
  const double conj_log = n * g.x0 * (std::log(fs.x) - std::log(fs.y)) +
                          (fs.n2 - fs.n1) * std::log((g.b - g.x0) * n);
  const double conj_sign = (fs.n2 - fs.n1) % 2 == 0 ? 1.0 : -1.0;
  const double jac_log = std::log(g.c * g.c3) + 0.25 * std::log(static_cast<double>(n)) -
                         g.c1 * t / std::sqrt(static_cast<double>(n)) * std::log(g.c2);

  auto evaluate = [&](int refine) {
    const ContourQuadrature zq = discretize(zpath, refine);
    const ContourQuadrature wq = discretize(wpath, refine);
    std::vector<Complex> gz(zq.nodes.size()), gw(wq.nodes.size());
    double ref_z = -std::numeric_limits<double>::infinity();
    double ref_w = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < zq.nodes.size(); ++i) {
      gz[i] = finite_exponent(zq.nodes[i], fs.x, n, fs.n1, na_f, nb_f, true);
      ref_z = std::max(ref_z, gz[i].real());
    }
    for (size_t j = 0; j < wq.nodes.size(); ++j) {
      gw[j] = finite_exponent(wq.nodes[j], fs.y, n, fs.n2, na_f, nb_f, false);
      ref_w = std::min(ref_w, gw[j].real());
    }
    const double log_norm = conj_log + jac_log + ref_z - ref_w;
    if (log_norm > 690.0) {
      throw OverflowGuardError("rescaled_finite_kernel: normalization overflow");
    }
    std::vector<Complex> wfac(wq.nodes.size());
    for (size_t j = 0; j < wq.nodes.size(); ++j) {
      wfac[j] = wq.weights[j] * std::exp(Complex(ref_w, 0.0) - gw[j]);
    }
    Complex acc(0.0, 0.0);
    for (size_t i = 0; i < zq.nodes.size(); ++i) {
      const Complex zf = zq.weights[i] * std::exp(gz[i] - Complex(ref_z, 0.0));
      Complex inner(0.0, 0.0);
      for (size_t j = 0; j < wq.nodes.size(); ++j) {
        inner += wfac[j] / (zq.nodes[i] - wq.nodes[j]);
      }
      acc += zf * inner;
    }
    acc *= std::exp(log_norm) / ((2.0 * kPi * kI) * (2.0 * kPi * kI));
    return acc;
  };

  Complex coarse = evaluate(0);
  Complex value = coarse;
  for (int level = 1; level <= 2; ++level) {
    const Complex fine_val = evaluate(level);
    const double diff = std::abs(fine_val - coarse);
    const double scale = std::max(1e-9, std::abs(fine_val));
    value = fine_val;
    if (diff <= 1e-7 * scale) break;
    if (level == 2) {
      throw NonConvergenceError("rescaled_finite_kernel: refinement did not stabilize");
    }
    coarse = fine_val;
  }

  double result = conj_sign * value.real();

  // single-contour piece, nonzero only off the equal-level diagonal
  if (fs.n1 < fs.n2 && fs.x >= fs.y) {
    const double rb = (g.b - g.x0) * n - delta;
    ContourPath gb = ContourPath::circle(Complex(nb_f, 0.0), rb,
                                         std::max(48, static_cast<int>(rb / 4.0)));
    gb.points_per_panel = 16;
    const ContourQuadrature q = discretize(gb, 1);
    Complex acc(0.0, 0.0);
    double ref = -std::numeric_limits<double>::infinity();
    std::vector<Complex> ge(q.nodes.size());
    for (size_t i = 0; i < q.nodes.size(); ++i) {
      const Complex w = q.nodes[i];
      ge[i] = -(w + 1.0) * std::log(fs.x) + w * std::log(fs.y) +
              static_cast<double>(fs.n1 - fs.n2) * std::log(w - nb_f);
      ref = std::max(ref, ge[i].real());
    }
    for (size_t i = 0; i < q.nodes.size(); ++i) {
      acc += q.weights[i] * std::exp(ge[i] - Complex(ref, 0.0));
    }
    acc *= std::exp(conj_log + jac_log + ref) / (2.0 * kPi * kI);
    result += conj_sign * acc.real();
  }
  return result;
}

// ---------------------------------------------------------------------------
// gap probabilities
// ---------------------------------------------------------------------------

NystromGrid nystrom_grid(double lo, double hi, int m) {
  if (m < 8) throw ArgumentError("nystrom_grid: need at least 8 nodes");
  const QuadratureRule r = gauss_legendre(m, lo, hi);
  NystromGrid g;
  g.lo = lo;
  g.hi = hi;
  g.nodes = r.nodes;
  g.weights = r.weights;
  return g;
}

double fredholm_det(const std::function<double(double, double)>& kernel, double lo, double hi,
                    int m) {
  const NystromGrid g = nystrom_grid(lo, hi, m);
  std::vector<double> mat(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double sym = std::sqrt(g.weights[i] * g.weights[j]);
      mat[static_cast<size_t>(i) * m + j] =
          (i == j ? 1.0 : 0.0) - sym * kernel(g.nodes[i], g.nodes[j]);
    }
  }
  return lu_det(std::move(mat), m);
}

double pearcey_gap_mc(int n, int samples, double e_lo, double e_hi, RngStream& stream) {
  if (n % 2 != 0 || n < 2 || n > 200) {
    throw ArgumentError("pearcey_gap_mc: n must be even and at most 200");
  }
  ModelSpec spec;
  spec.kind = ModelKind::GueExt;
  spec.n_levels = n;
  spec.a.assign(n, std::sqrt(static_cast<double>(n)));
  for (int i = n / 2; i < n; ++i) spec.a[i] = -spec.a[i];
  const double scale = 3.0 * std::pow(static_cast<double>(n), 0.25);

  int gaps = 0;
  for (int k = 0; k < samples; ++k) {
    RngStream sub = stream.split(static_cast<std::uint64_t>(k));
    const std::vector<double> vals = sample_gue_ext_top_level(spec, sub);
    bool empty = true;
    for (double lam : vals) {
      const double zoomed = lam * scale;
      if (zoomed >= e_lo && zoomed <= e_hi) {
        empty = false;
        break;
      }
    }
    if (empty) ++gaps;
  }
  return static_cast<double>(gaps) / samples;
}

} // namespace minorlab
