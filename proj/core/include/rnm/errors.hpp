#pragma once

#include <stdexcept>
#include <string>

namespace rnm {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The angular part of the leading Laplacian term is not positive definite.
class DegenerateSingularity : public Error {
 public:
  DegenerateSingularity(const std::string& what, double theta)
      : Error(what), theta_(theta) {}
  /// Angle at which the homogeneous Laplacian part is smallest.
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

/// A Gram matrix failed its Cholesky pivot floor or orthonormality gate.
class RankDeficient : public Error {
 public:
  RankDeficient(const std::string& what, int index) : Error(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// A truncated power series was evaluated where its tail is not negligible.
class TruncationInsufficient : public Error {
 public:
  using Error::Error;
};

/// The one-point function vanishes (or underflows) at the requested root.
class RootAtZero : public Error {
 public:
  using Error::Error;
};

/// An adaptive quadrature or root bracket did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (configuration, coefficient tables, arguments).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace rnm
