#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "minorlab/errors.hpp"

namespace minorlab {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

// Principal branch of log Gamma(z) for Re z > 0.5; elsewhere via reflection,
// where the branch is chosen so that exp(log_gamma(z)) == Gamma(z) exactly.
// Throws PoleError within 1e-14 of a nonpositive integer.
Complex log_gamma(Complex z);

// log(sin(pi z)) evaluated without overflow for large |Im z|.
Complex log_sin_pi(Complex z);

// Real log-gamma for x > 0.
double log_gamma_real(double x);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;
};

// Gauss-Legendre rule with n nodes on [a, b]; exact for degree <= 2n-1.
QuadratureRule gauss_legendre(int n, double a, double b);

// ---------------------------------------------------------------------------
// Vandermonde product
// ---------------------------------------------------------------------------

// prod_{j<k} (x_k - x_j); 1 for empty or singleton input.
double vandermonde(const std::vector<double>& x);

// ---------------------------------------------------------------------------
// Dense complex matrices and the Hermitian eigensolver
// ---------------------------------------------------------------------------

class CMatrix {
public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  // A^H A of the first `ncols` columns.
  CMatrix gram(int ncols) const;

  // Leading principal minor of order n.
  CMatrix top_left(int n) const;

  static CMatrix multiply(const CMatrix& a, const CMatrix& b);
  CMatrix adjoint() const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

struct EigenResult {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column k is the eigenvector of values[k]; empty if not requested
};

// Eigenvalues (and optionally vectors) of a Hermitian matrix, by Householder
// tridiagonalization and implicit-shift QL. Throws NotHermitianError if the
// input is asymmetric beyond `hermitian_tol`.
EigenResult hermitian_eigen(const CMatrix& h, bool want_vectors = false,
                            double hermitian_tol = 1e-12);

// Cholesky factor L (lower) of a Hermitian positive definite matrix.
// Throws SingularError if a pivot is not safely positive.
CMatrix cholesky(const CMatrix& a);

// Solve L x = b with L lower triangular (in place on a copy of b).
std::vector<Complex> forward_solve(const CMatrix& l, const std::vector<Complex>& b);

// det(A) of a real dense matrix by partial-pivot LU.
double lu_det(std::vector<double> a, int n);

} // namespace minorlab
