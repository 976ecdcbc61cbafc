#pragma once

#include <stdexcept>
#include <string>

namespace folicalc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point lies outside the coordinate box of its patch.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Singular frame, non-positive metric block, or singular matrix block.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& what, double offending = 0.0) : Error(what), offending_(offending) {}
  double offending_value() const { return offending_; }

 private:
  double offending_;
};

/// An operation was called outside its precondition (e.g. a leaf-only
/// invariant requested for a non-integrable distribution).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The request is well-formed but deliberately not supported (odd leaf rank
/// for the spinor factor, odd total dimension for the residue density).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Laurent fitting refused the grid or could not complete.
class FitError : public Error {
 public:
  using Error::Error;
};

/// Quadrature did not converge under one refinement step.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// A complex patch violates the structure of an adapted complex foliation.
class StructuralError : public Error {
 public:
  using Error::Error;
};

}  // namespace folicalc
