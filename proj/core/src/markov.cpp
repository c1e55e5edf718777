#include "minorlab/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace minorlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

void require_strictly_ascending(const std::vector<double>& v, const char* what) {
  for (size_t i = 1; i < v.size(); ++i) {
    if (!(v[i - 1] < v[i])) {
      throw DegenerateError(std::string(what) + ": entries must be strictly ascending");
    }
  }
}

bool weakly_interlaced(const std::vector<double>& mu, const std::vector<double>& lambda) {
  // lambda_1 <= mu_1 <= lambda_2 <= ... <= mu_{n-1} <= lambda_n
  for (size_t i = 0; i < mu.size(); ++i) {
    if (!(lambda[i] <= mu[i] && mu[i] <= lambda[i + 1])) return false;
  }
  return true;
}

// log w_n(z) for the model's weight at level n (1-based); zero powers are
// skipped so boundary points do not produce 0 * log(0).
double log_weight(const ModelSpec& spec, int n, double z) {
  switch (spec.kind) {
    case ModelKind::GueExt:
      return -0.5 * z * z + spec.a[n - 1] * z;
    case ModelKind::Wishart: {
      const int p = spec.m - n;
      return (p == 0 ? 0.0 : p * std::log(z)) + spec.a[n - 1] * z;
    }
    case ModelKind::MultipleLaguerre:
      return spec.alpha[n - 1] == 0 ? -z : spec.alpha[n - 1] * std::log(z) - z;
    case ModelKind::JacobiPineiro: {
      const double la = spec.alpha[n - 1] == 0 ? 0.0 : spec.alpha[n - 1] * std::log(z);
      const int p = spec.m_prime - n;
      return la + (p == 0 ? 0.0 : p * std::log1p(-z));
    }
  }
  return 0.0;
}

// log psi(z); for the Wishart / Laguerre / Jacobi-Pineiro models this is
// singular at the range boundary, where a previous-level point would make
// the conditional law degenerate.
double log_psi(const ModelSpec& spec, double z) {
  switch (spec.kind) {
    case ModelKind::GueExt: return 0.0;
    case ModelKind::Wishart:
    case ModelKind::MultipleLaguerre: return std::log(z);
    case ModelKind::JacobiPineiro: return std::log(z) + std::log1p(-z);
  }
  return 0.0;
}

double log_norm_constant(const ModelSpec& spec, int n) {
  switch (spec.kind) {
    case ModelKind::GueExt:
      return 0.5 * std::log(2.0 * kPi) + 0.5 * spec.a[n - 1] * spec.a[n - 1];
    case ModelKind::Wishart:
      return std::lgamma(spec.m - n + 1.0) - spec.m * std::log(-spec.a[n - 1]);
    case ModelKind::MultipleLaguerre:
      return std::lgamma(spec.alpha[n - 1] + 1.0);
    case ModelKind::JacobiPineiro:
      return std::lgamma(spec.alpha[n - 1] + 1.0) + std::lgamma(spec.m_prime - n + 1.0) -
             std::lgamma(spec.alpha[n - 1] + spec.m_prime + 1.0);
  }
  return 0.0;
}

double log_vandermonde_ascending(const std::vector<double>& x) {
  double s = 0.0;
  for (size_t k = 1; k < x.size(); ++k) {
    for (size_t j = 0; j < k; ++j) s += std::log(x[k] - x[j]);
  }
  return s;
}

void require_in_range(const ModelSpec& spec, const std::vector<double>& v) {
  for (double z : v) {
    if (!spec.in_range(z)) throw RangeError("coordinate outside the model range");
  }
}

// Nonnegative coupling with strictly positive interior points required.
void require_interior(const ModelSpec& spec, const std::vector<double>& mu) {
  if (spec.kind == ModelKind::GueExt) return;
  for (double z : mu) {
    if (!(z > 0.0) || (spec.kind == ModelKind::JacobiPineiro && !(z < 1.0))) {
      throw DegenerateError("previous level must lie strictly inside the range");
    }
  }
}

} // namespace

double transition_density(const ModelSpec& spec, int n, const std::vector<double>& mu,
                          const std::vector<double>& lambda) {
  spec.validate();
  if (n < 1 || n > spec.n_levels) throw ArgumentError("transition_density: bad level");
  if (static_cast<int>(lambda.size()) != n || static_cast<int>(mu.size()) != n - 1) {
    throw ArgumentError("transition_density: size mismatch");
  }
  require_in_range(spec, mu);
  require_in_range(spec, lambda);
  require_strictly_ascending(mu, "transition_density");
  for (size_t i = 1; i < lambda.size(); ++i) {
    if (!(lambda[i - 1] <= lambda[i])) {
      throw ArgumentError("transition_density: lambda must be ascending");
    }
  }
  if (!weakly_interlaced(mu, lambda)) return 0.0;
  require_interior(spec, mu);

  double logp = -log_norm_constant(spec, n);
  logp += log_vandermonde_ascending(lambda);
  logp -= log_vandermonde_ascending(mu);
  for (double z : lambda) {
    // boundary points carry zero density when the weight vanishes there
    if (spec.kind != ModelKind::GueExt && z <= 0.0) {
      const int alpha_or_pow =
          spec.kind == ModelKind::Wishart ? spec.m - n : spec.alpha[n - 1];
      if (alpha_or_pow > 0) return 0.0;
    }
    if (spec.kind == ModelKind::JacobiPineiro && z >= 1.0 && spec.m_prime - n > 0) return 0.0;
    logp += log_weight(spec, n, z);
  }
  for (double z : mu) {
    logp -= log_weight(spec, n, z) + log_psi(spec, z);
  }
  return std::exp(logp);
}

double joint_density(const ModelSpec& spec, const GTPattern& pattern) {
  spec.validate();
  if (pattern.n_levels() != spec.n_levels) {
    throw ArgumentError("joint_density: pattern does not match the model");
  }
  double p = transition_density(spec, 1, {}, pattern.level(1));
  for (int n = 2; n <= spec.n_levels; ++n) {
    if (p == 0.0) return 0.0;
    p *= transition_density(spec, n, pattern.level(n - 1), pattern.level(n));
  }
  return p;
}

double joint_density_determinant(const ModelSpec& spec, const GTPattern& pattern) {
  spec.validate();
  const int nlev = spec.n_levels;
  if (pattern.n_levels() != nlev) {
    throw ArgumentError("joint_density_determinant: pattern does not match the model");
  }
  for (int n = 1; n <= nlev; ++n) require_in_range(spec, pattern.level(n));

  const auto& top = pattern.level(nlev);
  double p = std::exp(log_vandermonde_ascending(top));
  for (int n = 1; n <= nlev; ++n) {
    p *= std::exp(log_weight(spec, nlev, top[n - 1]) - log_norm_constant(spec, n));
  }

  // phi_n(x, y) = w_n(x) / (w_{n+1}(x) psi(x)) 1_{x<y}; the virtual row is 1.
  for (int n = 1; n < nlev; ++n) {
    const auto& lower = pattern.level(n);
    const auto& upper = pattern.level(n + 1);
    const int sz = n + 1;
    std::vector<double> det(static_cast<size_t>(sz) * sz);
    for (int i = 0; i < sz; ++i) {
      for (int j = 0; j < sz; ++j) {
        double v;
        if (i == sz - 1) {
          v = 1.0;  // virtual variable row
        } else if (lower[i] < upper[j]) {
          v = std::exp(log_weight(spec, n, lower[i]) - log_weight(spec, n + 1, lower[i]) -
                       log_psi(spec, lower[i]));
        } else {
          v = 0.0;
        }
        det[static_cast<size_t>(i) * sz + j] = v;
      }
    }
    p *= lu_det(det, sz);
  }
  return p;
}

namespace {

// Strictly increasing on each pole-free interval; one root per interval.
// kind 0: f(z) = z - scalar - sum c_i/(z-mu_i)        (Gaussian update)
// kind 1: f(z) = z - scalar - sum c_i z/(z-mu_i)      (gram update)
struct Secular {
  const std::vector<double>& mu;
  const std::vector<double>& c;
  double scalar;
  int kind;

  double operator()(double z) const {
    double f = z - scalar;
    for (size_t i = 0; i < mu.size(); ++i) {
      f -= (kind == 0 ? c[i] : c[i] * z) / (z - mu[i]);
    }
    return f;
  }
  double derivative(double z) const {
    double d = 1.0;
    for (size_t i = 0; i < mu.size(); ++i) {
      const double dz = z - mu[i];
      d += (kind == 0 ? c[i] : c[i] * mu[i]) / (dz * dz);
    }
    return d;
  }
};

double bisect_root(const Secular& f, double lo, double hi) {
  // invariant: f(lo) < 0 < f(hi)
  const double width = hi - lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo < 1e-13 * width || mid == lo || mid == hi) break;
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double z = 0.5 * (lo + hi);
  // Newton polish, kept inside the bracket.
  for (int it = 0; it < 4; ++it) {
    const double step = f(z) / f.derivative(z);
    const double znew = z - step;
    if (!(znew > lo) || !(znew < hi)) break;
    z = znew;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

// Roots of the secular function, one per interval of the pole sequence.
// For kind 0 the first interval is (-inf, mu_1); for kind 1 it is (0, mu_1)
// using f(0) = -scalar < 0.
std::vector<double> secular_roots(const std::vector<double>& mu, const std::vector<double>& c,
                                  double scalar, int kind) {
  const int n = static_cast<int>(mu.size()) + 1;
  Secular f{mu, c, scalar, kind};
  std::vector<double> roots(n);
  const double eps_rel = 1e-13;

  for (int k = 0; k < n; ++k) {
    double lo, hi;
    if (k == 0) {
      if (kind == 1) {
        lo = 0.0;
      } else {
        // expand the bracket leftwards until f < 0
        double width = 1.0 + std::abs(mu.front());
        lo = mu.front() - width;
        int guard = 0;
        while (f(lo) >= 0.0) {
          width *= 2.0;
          lo = mu.front() - width;
          if (++guard > 200) throw ConvergenceError("secular bracket expansion failed (left)");
        }
      }
      hi = mu.front();
      // move hi off the pole where f -> +inf
      double shift = eps_rel * (1.0 + std::abs(hi));
      int guard = 0;
      while (f(hi - shift) <= 0.0) {
        shift *= 2.0;
        if (++guard > 200) throw ConvergenceError("secular bracket failed at pole");
      }
      hi -= shift;
      if (!(lo < hi)) {
        // the root is pinned against the pole
        roots[k] = mu.front();
        continue;
      }
      if (f(lo) >= 0.0) {
        roots[k] = lo;
        continue;
      }
    } else if (k == n - 1) {
      lo = mu.back();
      double shift = eps_rel * (1.0 + std::abs(lo));
      int guard = 0;
      while (f(lo + shift) >= 0.0) {
        shift *= 2.0;
        if (++guard > 200) throw ConvergenceError("secular bracket failed at pole");
      }
      lo += shift;
      double width = 1.0 + std::abs(mu.back());
      hi = mu.back() + width;
      guard = 0;
      while (f(hi) <= 0.0) {
        width *= 2.0;
        hi = mu.back() + width;
        if (++guard > 200) throw ConvergenceError("secular bracket expansion failed (right)");
      }
    } else {
      lo = mu[k - 1];
      hi = mu[k];
      const double gap = hi - lo;
      double shift = eps_rel * gap;
      int guard = 0;
      while (f(lo + shift) >= 0.0) {
        shift *= 2.0;
        if (++guard > 200) throw ConvergenceError("secular bracket failed at pole");
      }
      lo += shift;
      shift = eps_rel * gap;
      guard = 0;
      while (f(hi - shift) <= 0.0) {
        shift *= 2.0;
        if (++guard > 200) throw ConvergenceError("secular bracket failed at pole");
      }
      hi -= shift;
      if (!(lo < hi)) {
        roots[k] = 0.5 * (mu[k - 1] + mu[k]);
        continue;
      }
    }
    roots[k] = bisect_root(f, lo, hi);
  }
  return roots;
}

double exp_unit(RngStream& stream) {
  // |standard complex normal|^2 is Exp(1); drawn as two squared normals.
  const double re = stream.gaussian(0.0, 0.5);
  const double im = stream.gaussian(0.0, 0.5);
  return re * re + im * im;
}

double gamma_integer(RngStream& stream, int shape) {
  // Gamma(shape, 1) for integer shape, as half a chi-square with 2*shape dof.
  return 0.5 * stream.chi_square_2k(static_cast<unsigned>(shape));
}

} // namespace

SecularCoefficients recover_coefficients_gue(const std::vector<double>& mu,
                                             const std::vector<double>& lambda) {
  SecularCoefficients out;
  const size_t nm = mu.size();
  out.coupling.resize(nm);
  for (size_t i = 0; i < nm; ++i) {
    double num = 1.0, den = 1.0;
    for (double l : lambda) num *= mu[i] - l;
    for (size_t j = 0; j < nm; ++j) {
      if (j != i) den *= mu[i] - mu[j];
    }
    out.coupling[i] = -num / den;
  }
  double s = 0.0;
  for (double l : lambda) s += l;
  for (double m : mu) s -= m;
  out.scalar = s;
  return out;
}

SecularCoefficients recover_coefficients_laguerre(const std::vector<double>& mu,
                                                  const std::vector<double>& lambda) {
  SecularCoefficients out;
  const size_t nm = mu.size();
  out.coupling.resize(nm);
  for (size_t i = 0; i < nm; ++i) {
    double num = 1.0, den = mu[i];
    for (double l : lambda) num *= mu[i] - l;
    for (size_t j = 0; j < nm; ++j) {
      if (j != i) den *= mu[i] - mu[j];
    }
    out.coupling[i] = -num / den;
  }
  double num = 1.0, den = 1.0;
  for (double l : lambda) num *= l;
  for (double m : mu) den *= m;
  out.scalar = num / den;
  return out;
}

std::vector<double> sample_transition_gue(const std::vector<double>& mu, double a_n,
                                          RngStream& stream) {
  require_strictly_ascending(mu, "sample_transition_gue");
  std::vector<double> c(mu.size());
  for (double& ci : c) ci = exp_unit(stream);
  const double h_nn = stream.gaussian(a_n, 1.0);
  if (mu.empty()) return {h_nn};
  return secular_roots(mu, c, h_nn, 0);
}

std::vector<double> sample_transition_laguerre(const std::vector<double>& mu, int alpha_n,
                                               RngStream& stream) {
  if (alpha_n < 0) throw ArgumentError("sample_transition_laguerre: alpha must be >= 0");
  require_strictly_ascending(mu, "sample_transition_laguerre");
  for (double m : mu) {
    if (!(m > 0.0)) throw DegenerateError("sample_transition_laguerre: mu must be positive");
  }
  std::vector<double> c(mu.size());
  for (double& ci : c) ci = exp_unit(stream);
  const double xi_n = gamma_integer(stream, alpha_n + 1);
  if (mu.empty()) return {xi_n};
  return secular_roots(mu, c, xi_n, 1);
}

std::vector<double> sample_transition_jp(const std::vector<double>& mu_tilde, int alpha_n,
                                         int m_prime, int n, RngStream& stream) {
  if (alpha_n < 0) throw ArgumentError("sample_transition_jp: alpha must be >= 0");
  if (m_prime < n) throw ArgumentError("sample_transition_jp: needs M' >= n");
  if (static_cast<int>(mu_tilde.size()) != n - 1) {
    throw ArgumentError("sample_transition_jp: mu size must be n-1");
  }
  require_strictly_ascending(mu_tilde, "sample_transition_jp");
  for (double m : mu_tilde) {
    if (!(m > 0.0 && m < 1.0)) {
      throw DegenerateError("sample_transition_jp: mu must lie strictly inside (0,1)");
    }
  }
  // Work on the unbounded scale lambda = lt/(1-lt).
  std::vector<double> mu(mu_tilde.size());
  for (size_t i = 0; i < mu.size(); ++i) mu[i] = mu_tilde[i] / (1.0 - mu_tilde[i]);

  const double eta2 = gamma_integer(stream, m_prime - n + 1);
  const double xi2 = gamma_integer(stream, alpha_n + 1);
  std::vector<double> zeta(mu.size());
  for (size_t i = 0; i < mu.size(); ++i) {
    zeta[i] = (1.0 + mu[i]) * exp_unit(stream) / eta2;
  }
  const double zeta_n = xi2 / eta2;

  std::vector<double> lambda =
      mu.empty() ? std::vector<double>{zeta_n} : secular_roots(mu, zeta, zeta_n, 1);
  for (double& l : lambda) l = l / (1.0 + l);
  return lambda;
}

GTPattern sample_chain(const ModelSpec& spec, RngStream& stream) {
  spec.validate();
  GTPattern pat;
  pat.model = spec;
  pat.levels.reserve(spec.n_levels);

  // level 1 from p_1
  double first = 0.0;
  switch (spec.kind) {
    case ModelKind::GueExt:
      first = stream.gaussian(spec.a[0], 1.0);
      break;
    case ModelKind::Wishart:
      first = gamma_integer(stream, spec.m) / (-spec.a[0]);
      break;
    case ModelKind::MultipleLaguerre:
      first = gamma_integer(stream, spec.alpha[0] + 1);
      break;
    case ModelKind::JacobiPineiro: {
      const double g1 = gamma_integer(stream, spec.alpha[0] + 1);
      const double g2 = gamma_integer(stream, spec.m_prime);
      first = g1 / (g1 + g2);
      break;
    }
  }
  pat.levels.push_back({first});

  for (int n = 2; n <= spec.n_levels; ++n) {
    const auto& mu = pat.levels.back();
    switch (spec.kind) {
      case ModelKind::GueExt:
        pat.levels.push_back(sample_transition_gue(mu, spec.a[n - 1], stream));
        break;
      case ModelKind::Wishart: {
        // Gram update with weight z^{M-n} e^{a_n z}: rescale to unit rate.
        // On the scale y = -a_n z the transition is the Laguerre one with
        // alpha = M - n.
        const double rate = -spec.a[n - 1];
        std::vector<double> scaled(mu.size());
        for (size_t i = 0; i < mu.size(); ++i) scaled[i] = mu[i] * rate;
        auto lam = sample_transition_laguerre(scaled, spec.m - n, stream);
        for (double& l : lam) l /= rate;
        pat.levels.push_back(std::move(lam));
        break;
      }
      case ModelKind::MultipleLaguerre:
        pat.levels.push_back(sample_transition_laguerre(mu, spec.alpha[n - 1], stream));
        break;
      case ModelKind::JacobiPineiro:
        pat.levels.push_back(
            sample_transition_jp(mu, spec.alpha[n - 1], spec.m_prime, n, stream));
        break;
    }
  }
  return pat;
}

} // namespace minorlab
