#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cstar {

// Base class for all toolkit errors. Every failure mode the CLI maps to an
// exit code derives from this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live on different algebra shapes.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// An eigensolver or factorization did not converge, or a quantity that must
// be real came out with a large imaginary part.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

// A vector argument that must be nonzero had norm zero.
class ZeroVector : public Error {
 public:
  using Error::Error;
};

// compress() was given an element that is not a self-adjoint projection.
class NotAProjection : public Error {
 public:
  using Error::Error;
};

// compress() was given a state with E(p) below the weight threshold; the
// compressed state E(pxp)/E(p) is undefined there.
class ZeroWeight : public Error {
 public:
  using Error::Error;
};

class NotSelfAdjoint : public Error {
 public:
  using Error::Error;
};

// Requested eigenvalue is farther from the spectrum than the cluster
// tolerance allows.
class NotInSpectrum : public Error {
 public:
  using Error::Error;
};

// An operation that requires an accepted eigenstate certificate was given a
// state that fails the residual criterion.
class NotAnEigenstate : public Error {
 public:
  using Error::Error;
};

// orthogonality witness requested for lambda1 == lambda2.
class DegenerateWitness : public Error {
 public:
  using Error::Error;
};

// A scalar function was evaluated outside the domain where it is finite.
class EvaluatorDomain : public Error {
 public:
  using Error::Error;
};

// Expression evaluation hit a name with no binding in the environment.
class UnboundName : public Error {
 public:
  using Error::Error;
};

// Bad input document: wrong JSON structure, invalid shape, or a state that
// violates its validation tolerances.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// Expression parse failure. Carries the byte offset of the first invalid
// token and the token set the parser would have accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(std::string message, std::size_t offset,
              std::vector<std::string> expected)
      : Error(std::move(message)), offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace cstar
