#include "minorlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minorlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

// Lanczos g = 607/128, 15 coefficients.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosCoef[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

Complex lanczos_log_gamma(Complex z) {
  // valid for Re z > 0
  Complex a(kLanczosCoef[0], 0.0);
  for (int k = 1; k < 15; ++k) {
    a += kLanczosCoef[k] / (z - 1.0 + static_cast<double>(k));
  }
  const Complex t = z + (kLanczosG - 0.5);
  return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(a);
}

} // namespace

Complex log_sin_pi(Complex z) {
  const double y = z.imag();
  const Complex i(0.0, 1.0);
  if (y > 1.0) {
    // sin(pi z) = (i/2) exp(-i pi z) (1 - exp(2 i pi z))
    return -i * kPi * z + Complex(-std::log(2.0), 0.5 * kPi) +
           std::log(1.0 - std::exp(2.0 * i * kPi * z));
  }
  if (y < -1.0) {
    // sin(pi z) = -(i/2) exp(i pi z) (1 - exp(-2 i pi z))
    return i * kPi * z + Complex(-std::log(2.0), -0.5 * kPi) +
           std::log(1.0 - std::exp(-2.0 * i * kPi * z));
  }
  return std::log(std::sin(kPi * z));
}

Complex log_gamma(Complex z) {
  if (std::abs(z.imag()) < 1e-14) {
    const double r = std::round(z.real());
    if (r <= 0.0 && std::abs(z.real() - r) < 1e-14) {
      throw PoleError("log_gamma: pole at nonpositive integer");
    }
  }
  if (z.real() >= 0.5) {
    return lanczos_log_gamma(z);
  }
  // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z). The branch returned
  // here satisfies exp(log_gamma(z)) == Gamma(z); it may differ from the
  // principal branch by 2 pi i k away from the real axis.
  return std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

double log_gamma_real(double x) {
  if (!(x > 0.0)) {
    throw PoleError("log_gamma_real: argument must be positive");
  }
  return std::lgamma(x);
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) {
    throw ArgumentError("gauss_legendre: need at least one node");
  }
  if (!(a < b)) {
    throw ArgumentError("gauss_legendre: empty interval");
  }
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  const double xm = 0.5 * (b + a);
  const double xl = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 * xl / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = xm - xl * x;
    rule.nodes[n - 1 - i] = xm + xl * x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double vandermonde(const std::vector<double>& x) {
  double p = 1.0;
  for (size_t k = 1; k < x.size(); ++k) {
    for (size_t j = 0; j < k; ++j) {
      p *= x[k] - x[j];
    }
  }
  return p;
}

CMatrix CMatrix::gram(int ncols) const {
  CMatrix g(ncols, ncols);
  for (int i = 0; i < ncols; ++i) {
    for (int j = i; j < ncols; ++j) {
      Complex s(0.0, 0.0);
      for (int k = 0; k < rows_; ++k) {
        s += std::conj((*this)(k, i)) * (*this)(k, j);
      }
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
  }
  return g;
}

CMatrix CMatrix::top_left(int n) const {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = (*this)(i, j);
    }
  }
  return m;
}

CMatrix CMatrix::multiply(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

CMatrix CMatrix::adjoint() const {
  CMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      t(j, i) = std::conj((*this)(i, j));
    }
  }
  return t;
}

namespace {

// Implicit-shift QL on a real symmetric tridiagonal (d, e); rotations are
// optionally accumulated into the complex column basis q.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, CMatrix* q) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) {
          throw ConvergenceError("hermitian_eigen: QL did not converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = (i >= l);
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (q) {
            for (int k = 0; k < q->rows(); ++k) {
              const Complex fk = (*q)(k, i + 1);
              (*q)(k, i + 1) = s * (*q)(k, i) + c * fk;
              (*q)(k, i) = c * (*q)(k, i) - s * fk;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  e.pop_back();
}

} // namespace

EigenResult hermitian_eigen(const CMatrix& h, bool want_vectors, double hermitian_tol) {
  const int n = h.rows();
  if (h.cols() != n) {
    throw ArgumentError("hermitian_eigen: matrix must be square");
  }
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      scale = std::max(scale, std::abs(h(i, j)));
    }
  }
  const double tol = hermitian_tol * std::max(1.0, scale);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (std::abs(h(i, j) - std::conj(h(j, i))) > tol) {
        throw NotHermitianError("hermitian_eigen: matrix is not Hermitian");
      }
    }
  }

  CMatrix a = h;
  CMatrix q;
  if (want_vectors) {
    q = CMatrix(n, n);
    for (int i = 0; i < n; ++i) q(i, i) = 1.0;
  }

  // Householder reduction to Hermitian tridiagonal form.
  std::vector<Complex> w(n), p(n);
  for (int k = 0; k < n - 2; ++k) {
    const int m = n - k - 1;  // length of the column below the diagonal
    double sigma2 = 0.0;
    for (int i = k + 1; i < n; ++i) sigma2 += std::norm(a(i, k));
    if (sigma2 == 0.0) continue;
    const double sigma = std::sqrt(sigma2);
    const Complex x0 = a(k + 1, k);
    const Complex phase = (x0 == Complex(0.0, 0.0)) ? Complex(1.0, 0.0) : x0 / std::abs(x0);

    // w = x + phase*sigma*e1, tau = 2/|w|^2
    for (int i = 0; i < m; ++i) w[i] = a(k + 1 + i, k);
    w[0] += phase * sigma;
    const double wnorm2 = 2.0 * sigma * (sigma + std::abs(x0));
    const double tau = 2.0 / wnorm2;

    // p = tau * A22 * w  (A22 = trailing block)
    for (int i = 0; i < m; ++i) {
      Complex s(0.0, 0.0);
      for (int j = 0; j < m; ++j) s += a(k + 1 + i, k + 1 + j) * w[j];
      p[i] = tau * s;
    }
    Complex wp(0.0, 0.0);
    for (int i = 0; i < m; ++i) wp += std::conj(w[i]) * p[i];
    const Complex kappa = 0.5 * tau * wp;
    for (int i = 0; i < m; ++i) p[i] -= kappa * w[i];

    // A22 <- A22 - w p^H - p w^H
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        a(k + 1 + i, k + 1 + j) -= w[i] * std::conj(p[j]) + p[i] * std::conj(w[j]);
      }
    }
    a(k + 1, k) = -phase * sigma;
    a(k, k + 1) = std::conj(a(k + 1, k));
    for (int i = k + 2; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }
    if (want_vectors) {
      // Q <- Q (I - tau w w^H), acting on trailing columns
      for (int r = 0; r < n; ++r) {
        Complex s(0.0, 0.0);
        for (int j = 0; j < m; ++j) s += q(r, k + 1 + j) * w[j];
        s *= tau;
        for (int j = 0; j < m; ++j) q(r, k + 1 + j) -= s * std::conj(w[j]);
      }
    }
  }

  // Phase-rotate the subdiagonal to be real nonnegative.
  std::vector<double> d(n), e(std::max(0, n - 1));
  std::vector<Complex> ph(n, Complex(1.0, 0.0));
  for (int i = 0; i + 1 < n; ++i) {
    const Complex sub = a(i + 1, i);
    const double mag = std::abs(sub);
    ph[i + 1] = (mag == 0.0) ? ph[i] : ph[i] * sub / mag;
    e[i] = mag;
  }
  for (int i = 0; i < n; ++i) d[i] = a(i, i).real();
  if (want_vectors) {
    for (int j = 0; j < n; ++j) {
      for (int r = 0; r < n; ++r) q(r, j) *= ph[j];
    }
  }

  tridiag_ql(d, e, want_vectors ? &q : nullptr);

  // Sort ascending.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });

  EigenResult out;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = d[idx[i]];
  if (want_vectors) {
    out.vectors = CMatrix(n, n);
    for (int j = 0; j < n; ++j) {
      for (int r = 0; r < n; ++r) out.vectors(r, j) = q(r, idx[j]);
    }
  }
  return out;
}

CMatrix cholesky(const CMatrix& a) {
  const int n = a.rows();
  CMatrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double diag = a(j, j).real();
    for (int k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (!(diag > 0.0) || !std::isfinite(diag)) {
      throw SingularError("cholesky: matrix is not safely positive definite");
    }
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

std::vector<Complex> forward_solve(const CMatrix& l, const std::vector<Complex>& b) {
  const int n = l.rows();
  std::vector<Complex> x(b);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) x[i] -= l(i, k) * x[k];
    x[i] /= l(i, i);
  }
  return x;
}

double lu_det(std::vector<double> a, int n) {
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
    }
    if (a[piv * n + k] == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      det = -det;
    }
    det *= a[k * n + k];
    for (int i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      for (int j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

} // namespace minorlab
