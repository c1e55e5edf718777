#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "minorlab/numerics.hpp"
#include "minorlab/rng.hpp"

using namespace minorlab;

namespace {

// det(A - lambda I) for a complex matrix, by LU with partial pivoting.
// Real-valued for Hermitian input up to roundoff.
double char_poly_det(const CMatrix& a, double lambda) {
  const int n = a.rows();
  std::vector<Complex> m(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i * n + j] = a(i, j) - (i == j ? lambda : 0.0);
  }
  Complex det(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(m[i * n + k]) > std::abs(m[piv * n + k])) piv = i;
    }
    if (std::abs(m[piv * n + k]) == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
      det = -det;
    }
    det *= m[k * n + k];
    for (int i = k + 1; i < n; ++i) {
      const Complex f = m[i * n + k] / m[k * n + k];
      for (int j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
    }
  }
  return det.real();
}

// Eigenvalues as sign-change roots of the characteristic polynomial,
// independent of the solver under test.
std::vector<double> char_poly_roots(const CMatrix& a) {
  const int n = a.rows();
  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs(a(i, j));
    bound = std::max(bound, row);
  }
  bound += 1.0;
  const int grid = 40000;
  std::vector<double> roots;
  double prev_x = -bound, prev_f = char_poly_det(a, prev_x);
  for (int k = 1; k <= grid; ++k) {
    const double x = -bound + 2.0 * bound * k / grid;
    const double f = char_poly_det(a, x);
    if (prev_f == 0.0) roots.push_back(prev_x);
    if (prev_f * f < 0.0) {
      double lo = prev_x, hi = x, flo = prev_f;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = char_poly_det(a, mid);
        if (flo * fm <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_f = f;
  }
  return roots;
}

CMatrix random_hermitian(int n, RngStream& rng) {
  CMatrix h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = Complex(rng.gaussian(0.0, 1.0), 0.0);
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = Complex(rng.gaussian(0.0, 0.5), rng.gaussian(0.0, 0.5));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

} // namespace

TEST_CASE("log_gamma matches classical values") {
  CHECK(std::abs(log_gamma(Complex(1.0, 0.0))) < 1e-14);
  CHECK(log_gamma(Complex(0.5, 0.0)).real() ==
        doctest::Approx(std::log(std::sqrt(M_PI))).epsilon(1e-13));
  CHECK(log_gamma(Complex(5.0, 0.0)).real() == doctest::Approx(std::log(24.0)).epsilon(1e-13));
  CHECK_THROWS_AS(log_gamma(Complex(0.0, 0.0)), PoleError);
  CHECK_THROWS_AS(log_gamma(Complex(-3.0, 0.0)), PoleError);
}

TEST_CASE("log_gamma satisfies the recurrence on a random grid") {
  RngStream rng(2024);
  for (int k = 0; k < 100; ++k) {
    const Complex z(0.5 + 9.5 * rng.uniform(), -10.0 + 20.0 * rng.uniform());
    const Complex lhs = log_gamma(z + 1.0);
    const Complex rhs = std::log(z) + log_gamma(z);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("log_gamma exponentiates to the true gamma under reflection") {
  // branch may differ by 2 pi i, but exp(log_gamma) must equal Gamma
  const Complex z(-2.3, 1.7);
  const Complex g = std::exp(log_gamma(z));
  // Gamma(z) = Gamma(z+3)/((z)(z+1)(z+2))
  const Complex ref = std::exp(log_gamma(z + 3.0)) / (z * (z + 1.0) * (z + 2.0));
  CHECK(std::abs(g - ref) < 1e-12 * std::abs(ref));
}

TEST_CASE("gauss_legendre small rules") {
  const QuadratureRule r1 = gauss_legendre(1, -1.0, 1.0);
  CHECK(r1.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

  const QuadratureRule r2 = gauss_legendre(2, -1.0, 1.0);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

  const QuadratureRule rx = gauss_legendre(2, 0.0, 1.0);
  double integral = 0.0;
  for (int i = 0; i < 2; ++i) integral += rx.weights[i] * rx.nodes[i] * rx.nodes[i];
  CHECK(integral == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(gauss_legendre(3, 1.0, 1.0), ArgumentError);
}

TEST_CASE("gauss_legendre integrates monomials exactly up to degree 2n-1") {
  for (int n = 1; n <= 20; ++n) {
    const QuadratureRule r = gauss_legendre(n, 0.0, 1.0);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double integral = 0.0;
      for (int i = 0; i < n; ++i) integral += r.weights[i] * std::pow(r.nodes[i], k);
      CHECK(integral == doctest::Approx(1.0 / (k + 1.0)).epsilon(1e-12));
    }
    for (size_t i = 1; i < r.nodes.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    CHECK(r.nodes.front() > 0.0);
    CHECK(r.nodes.back() < 1.0);
  }
}

TEST_CASE("vandermonde products") {
  CHECK(vandermonde({5.0}) == 1.0);
  CHECK(vandermonde({}) == 1.0);
  CHECK(vandermonde({0.0, 1.0, 2.0}) == doctest::Approx(2.0));
  CHECK(vandermonde({1.0, 1.0, 2.0}) == 0.0);
}

TEST_CASE("hermitian_eigen on explicit matrices") {
  CMatrix d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  const auto r = hermitian_eigen(d);
  CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.values[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.values[2] == doctest::Approx(3.0).epsilon(1e-14));

  CMatrix s(2, 2);
  s(0, 1) = 1.0;
  s(1, 0) = 1.0;
  const auto r2 = hermitian_eigen(s);
  CHECK(r2.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(r2.values[1] == doctest::Approx(1.0).epsilon(1e-14));

  CMatrix bad(2, 2);
  bad(0, 1) = 1.0;
  bad(1, 0) = 2.0;
  CHECK_THROWS_AS(hermitian_eigen(bad), NotHermitianError);
}

TEST_CASE("hermitian_eigen agrees with the characteristic-polynomial oracle") {
  RngStream rng(7);
  const CMatrix h = random_hermitian(5, rng);
  const auto solver = hermitian_eigen(h).values;
  const auto oracle = char_poly_roots(h);
  REQUIRE(oracle.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(solver[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
  }
}

TEST_CASE("hermitian_eigen residuals and unitary invariance") {
  RngStream rng(11);
  const int n = 12;
  const CMatrix h = random_hermitian(n, rng);
  const auto r = hermitian_eigen(h, true);
  double hnorm = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) hnorm = std::max(hnorm, std::abs(h(i, j)));
  }
  for (int k = 0; k < n; ++k) {
    double resid = 0.0;
    for (int i = 0; i < n; ++i) {
      Complex hv(0.0, 0.0);
      for (int j = 0; j < n; ++j) hv += h(i, j) * r.vectors(j, k);
      resid = std::max(resid, std::abs(hv - r.values[k] * r.vectors(i, k)));
    }
    CHECK(resid <= 1e-10 * std::max(1.0, hnorm));
    if (k > 0) CHECK(r.values[k] >= r.values[k - 1]);
  }

  // conjugate by a random unitary built from another Hermitian's eigenbasis
  const CMatrix g = random_hermitian(n, rng);
  const CMatrix u = hermitian_eigen(g, true).vectors;
  const CMatrix hu = CMatrix::multiply(CMatrix::multiply(u.adjoint(), h), u);
  const auto r2 = hermitian_eigen(hu);
  for (int k = 0; k < n; ++k) {
    CHECK(std::abs(r2.values[k] - r.values[k]) <= 1e-10 * std::max(1.0, hnorm));
  }
}

TEST_CASE("cholesky and forward solve") {
  RngStream rng(3);
  CMatrix x(6, 3);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 3; ++j) {
      x(i, j) = Complex(rng.gaussian(0.0, 0.5), rng.gaussian(0.0, 0.5));
    }
  }
  const CMatrix g = x.gram(3);
  const CMatrix l = cholesky(g);
  // L L^H == G
  const CMatrix ll = CMatrix::multiply(l, l.adjoint());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(ll(i, j) - g(i, j)) < 1e-12);
    }
  }
}

TEST_CASE("lu_det on known matrices") {
  CHECK(lu_det({2.0, 0.0, 0.0, 3.0}, 2) == doctest::Approx(6.0));
  CHECK(lu_det({0.0, 1.0, 1.0, 0.0}, 2) == doctest::Approx(-1.0));
  CHECK(lu_det({1.0, 2.0, 2.0, 4.0}, 2) == doctest::Approx(0.0));
}
