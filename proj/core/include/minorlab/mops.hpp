#pragma once

#include <vector>

#include "minorlab/numerics.hpp"

namespace minorlab {

// Contour-integral evaluation of the eight very-classical multiple
// orthogonal polynomial variants (type II monic polynomials and their
// type I biorthogonal partners).
enum class MopFamily {
  HermiteII,        // weights e^{-x^2/2 + a_k x} on R
  HermiteI,
  Laguerre2II,      // weights x^p e^{a_k x} on [0,inf), a_k < 0, p integer >= 0
  Laguerre2I,
  Laguerre1II,      // weights x^{alpha_k} e^{-x} on [0,inf), alpha_k > -1
  Laguerre1I,
  JacobiPineiroII,  // weights x^{alpha_k} (1-x)^beta on [0,1]
  JacobiPineiroI,
};

bool mop_is_type_two(MopFamily family);

// extra: p for the Laguerre2 families, beta for the JacobiPineiro families,
// ignored otherwise. Throws ParameterDegeneracyError on near-coincident
// parameters (gap < 1e-3).
double mop_eval(MopFamily family, const std::vector<double>& params, double extra, double x,
                double contour_scale = 1.0);

// Max absolute residual of every defining orthogonality integral (and, for
// type I, the unit pairing), each normalized against the integrand scale.
double mop_orthogonality_check(MopFamily family, const std::vector<double>& params,
                               double extra);

} // namespace minorlab
