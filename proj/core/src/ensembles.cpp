#include "minorlab/ensembles.hpp"

#include <cmath>
#include <limits>

namespace minorlab {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::GueExt: return "gue";
    case ModelKind::Wishart: return "wishart";
    case ModelKind::MultipleLaguerre: return "mlaguerre";
    case ModelKind::JacobiPineiro: return "jp";
  }
  return "?";
}

void ModelSpec::validate() const {
  if (n_levels < 1) throw ArgumentError("ModelSpec: need at least one level");
  switch (kind) {
    case ModelKind::GueExt:
      if (static_cast<int>(a.size()) != n_levels) {
        throw ArgumentError("ModelSpec: GUE source vector must have one entry per level");
      }
      break;
    case ModelKind::Wishart:
      if (static_cast<int>(a.size()) != n_levels) {
        throw ArgumentError("ModelSpec: Wishart rate vector must have one entry per level");
      }
      for (size_t j = 0; j < a.size(); ++j) {
        if (!(a[j] < 0.0)) {
          throw ArgumentError("ModelSpec: Wishart parameter a[" + std::to_string(j) +
                              "] must be negative");
        }
      }
      if (m < n_levels) throw ArgumentError("ModelSpec: Wishart needs M >= N");
      break;
    case ModelKind::MultipleLaguerre:
    case ModelKind::JacobiPineiro:
      if (static_cast<int>(alpha.size()) != n_levels) {
        throw ArgumentError("ModelSpec: alpha must have one entry per level");
      }
      for (int j = 0; j < n_levels; ++j) {
        if (alpha[j] < 0) throw ArgumentError("ModelSpec: alpha must be nonnegative");
        if (j > 0 && !(j + alpha[j - 1] <= j + 1 + alpha[j])) {
          throw ArgumentError("ModelSpec: alpha ordering (j + alpha_j nondecreasing) violated");
        }
      }
      if (m < n_levels + alpha.back()) {
        throw ArgumentError("ModelSpec: needs M >= N + alpha_N");
      }
      if (kind == ModelKind::JacobiPineiro && m_prime < n_levels) {
        throw ArgumentError("ModelSpec: JacobiPineiro needs M' >= N");
      }
      break;
  }
}

double ModelSpec::range_lo() const {
  return kind == ModelKind::GueExt ? -std::numeric_limits<double>::infinity() : 0.0;
}

double ModelSpec::range_hi() const {
  return kind == ModelKind::JacobiPineiro ? 1.0 : std::numeric_limits<double>::infinity();
}

bool ModelSpec::in_range(double x) const {
  return x >= range_lo() && x <= range_hi();
}

bool GTPattern::interlaced(double tol) const {
  for (size_t n = 1; n < levels.size(); ++n) {
    const auto& mu = levels[n - 1];
    const auto& nu = levels[n];
    for (size_t i = 0; i < mu.size(); ++i) {
      if (!(nu[i] <= mu[i] + tol) || !(mu[i] <= nu[i + 1] + tol)) return false;
    }
  }
  return true;
}

bool GTPattern::in_range() const {
  for (const auto& lv : levels) {
    for (double x : lv) {
      if (!model.in_range(x)) return false;
    }
  }
  return true;
}

namespace {

Complex standard_complex_normal(RngStream& stream, double var_each = 0.5) {
  const double re = stream.gaussian(0.0, var_each);
  const double im = stream.gaussian(0.0, var_each);
  return Complex(re, im);
}

// Spectra of the gram matrices of the first n columns, n = 1..N.
GTPattern minor_spectra_of_columns(const CMatrix& x, const ModelSpec& spec) {
  GTPattern pat;
  pat.model = spec;
  pat.levels.reserve(spec.n_levels);
  for (int n = 1; n <= spec.n_levels; ++n) {
    pat.levels.push_back(hermitian_eigen(x.gram(n)).values);
  }
  return pat;
}

CMatrix sample_gue_matrix(const ModelSpec& spec, RngStream& stream) {
  const int n = spec.n_levels;
  CMatrix z(n, n);
  for (int i = 0; i < n; ++i) {
    z(i, i) = Complex(stream.gaussian(0.0, 1.0) + spec.a[i], 0.0);
    for (int j = i + 1; j < n; ++j) {
      const Complex v = standard_complex_normal(stream);
      z(i, j) = v;
      z(j, i) = std::conj(v);
    }
  }
  return z;
}

CMatrix sample_laguerre_matrix(const ModelSpec& spec, RngStream& stream) {
  CMatrix x(spec.m, spec.n_levels);
  for (int i = 0; i < spec.m; ++i) {
    for (int j = 0; j < spec.n_levels; ++j) {
      if (i + 1 <= j + 1 + spec.alpha[j]) {
        x(i, j) = standard_complex_normal(stream);
      }
    }
  }
  return x;
}

} // namespace

GTPattern sample_gue_ext(const ModelSpec& spec, RngStream& stream) {
  spec.validate();
  if (spec.kind != ModelKind::GueExt) throw ArgumentError("sample_gue_ext: wrong model kind");
  const CMatrix z = sample_gue_matrix(spec, stream);
  GTPattern pat;
  pat.model = spec;
  pat.levels.reserve(spec.n_levels);
  for (int n = 1; n <= spec.n_levels; ++n) {
    pat.levels.push_back(hermitian_eigen(z.top_left(n)).values);
  }
  return pat;
}

std::vector<double> sample_gue_ext_top_level(const ModelSpec& spec, RngStream& stream) {
  spec.validate();
  if (spec.kind != ModelKind::GueExt) throw ArgumentError("wrong model kind");
  return hermitian_eigen(sample_gue_matrix(spec, stream)).values;
}

GTPattern sample_wishart(const ModelSpec& spec, RngStream& stream) {
  spec.validate();
  if (spec.kind != ModelKind::Wishart) throw ArgumentError("sample_wishart: wrong model kind");
  CMatrix w(spec.m, spec.n_levels);
  for (int i = 0; i < spec.m; ++i) {
    for (int j = 0; j < spec.n_levels; ++j) {
      w(i, j) = standard_complex_normal(stream, -1.0 / (2.0 * spec.a[j]));
    }
  }
  return minor_spectra_of_columns(w, spec);
}

GTPattern sample_multiple_laguerre(const ModelSpec& spec, RngStream& stream) {
  spec.validate();
  if (spec.kind != ModelKind::MultipleLaguerre) {
    throw ArgumentError("sample_multiple_laguerre: wrong model kind");
  }
  return minor_spectra_of_columns(sample_laguerre_matrix(spec, stream), spec);
}

GTPattern sample_jacobi_pineiro(const ModelSpec& spec, RngStream& stream) {
  spec.validate();
  if (spec.kind != ModelKind::JacobiPineiro) {
    throw ArgumentError("sample_jacobi_pineiro: wrong model kind");
  }
  const CMatrix x = sample_laguerre_matrix(spec, stream);
  CMatrix y(spec.m_prime, spec.n_levels);
  for (int i = 0; i < spec.m_prime; ++i) {
    for (int j = 0; j < spec.n_levels; ++j) {
      y(i, j) = standard_complex_normal(stream);
    }
  }

  GTPattern pat;
  pat.model = spec;
  pat.levels.reserve(spec.n_levels);
  for (int n = 1; n <= spec.n_levels; ++n) {
    const CMatrix gx = x.gram(n);
    CMatrix s = y.gram(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) s(i, j) += gx(i, j);
    }
    const CMatrix l = cholesky(s);
    double dmin = l(0, 0).real(), dmax = dmin;
    for (int i = 1; i < n; ++i) {
      dmin = std::min(dmin, l(i, i).real());
      dmax = std::max(dmax, l(i, i).real());
    }
    if ((dmax / dmin) * (dmax / dmin) > 1e12) {
      throw SingularError("sample_jacobi_pineiro: denominator numerically singular");
    }
    // L^{-1} Gx L^{-*} is Hermitian with the spectrum of S^{-1} Gx.
    CMatrix b(n, n);
    for (int j = 0; j < n; ++j) {
      std::vector<Complex> col(n);
      for (int i = 0; i < n; ++i) col[i] = gx(i, j);
      col = forward_solve(l, col);
      for (int i = 0; i < n; ++i) b(i, j) = col[i];
    }
    // right-multiply by L^{-*}: solve L conj rows
    CMatrix bt = b.adjoint();
    for (int j = 0; j < n; ++j) {
      std::vector<Complex> col(n);
      for (int i = 0; i < n; ++i) col[i] = bt(i, j);
      col = forward_solve(l, col);
      for (int i = 0; i < n; ++i) bt(i, j) = col[i];
    }
    CMatrix herm = bt.adjoint();
    // enforce exact Hermitian symmetry against roundoff
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const Complex avg = 0.5 * (herm(i, j) + std::conj(herm(j, i)));
        herm(i, j) = avg;
        herm(j, i) = std::conj(avg);
      }
    }
    auto vals = hermitian_eigen(herm).values;
    for (double& v : vals) v = std::clamp(v, 0.0, 1.0);
    pat.levels.push_back(std::move(vals));
  }
  return pat;
}

GTPattern sample_ensemble(const ModelSpec& spec, RngStream& stream) {
  switch (spec.kind) {
    case ModelKind::GueExt: return sample_gue_ext(spec, stream);
    case ModelKind::Wishart: return sample_wishart(spec, stream);
    case ModelKind::MultipleLaguerre: return sample_multiple_laguerre(spec, stream);
    case ModelKind::JacobiPineiro: return sample_jacobi_pineiro(spec, stream);
  }
  throw ArgumentError("sample_ensemble: unknown model kind");
}

} // namespace minorlab
