#pragma once

#include <stdexcept>
#include <string>

namespace minorlab {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ArgumentError : public Error {
public:
  using Error::Error;
};

// log-gamma called at a nonpositive integer.
class PoleError : public Error {
public:
  using Error::Error;
};

class NotHermitianError : public Error {
public:
  using Error::Error;
};

class SingularError : public Error {
public:
  using Error::Error;
};

// Coordinate outside the model's eigenvalue range.
class RangeError : public Error {
public:
  using Error::Error;
};

// Repeated entries where strict interlacing is required.
class DegenerateError : public Error {
public:
  using Error::Error;
};

// Root bracketing or iteration failed.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

// Quadrature did not stabilize under resolution doubling.
class NonConvergenceError : public Error {
public:
  using Error::Error;
};

// Model parameters too close together for the contour formulas.
class ParameterDegeneracyError : public Error {
public:
  using Error::Error;
};

// Scaling-map case does not match the lattice rate policy.
class CaseMismatchError : public Error {
public:
  using Error::Error;
};

// Evaluation requested on a branch cut.
class BranchError : public Error {
public:
  using Error::Error;
};

// Parameter outside the solvable window of the cusp geometry.
class OutOfRangeError : public Error {
public:
  using Error::Error;
};

// Magnitudes would overflow even in log space.
class OverflowGuardError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace minorlab
