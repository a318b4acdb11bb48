#pragma once

#include <stdexcept>
#include <string>

namespace tepml {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

/// Double root of the characteristic quadratic.
class DegenerateRoots : public Error {
 public:
  using Error::Error;
};

/// A characteristic root with nonpositive real part after the principal square root.
class RootSelection : public Error {
 public:
  using Error::Error;
};

/// Evaluation at (or numerically at) a kernel singularity.
class Singularity : public Error {
 public:
  using Error::Error;
};

class NearSingularQuadrature : public Error {
 public:
  using Error::Error;
};

/// Finite-difference evaluation too close to the source.
class FdUnreliable : public Error {
 public:
  using Error::Error;
};

class InvalidSource : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class SolverBreakdown : public Error {
 public:
  SolverBreakdown(const std::string& what, double rcond) : Error(what), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tepml
