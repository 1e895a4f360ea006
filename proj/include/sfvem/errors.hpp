#pragma once

#include <stdexcept>
#include <string>

namespace sfvem {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed mesh or polygon text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Cell orientation, manifoldness or simplicity violated.
class TopologyError : public Error {
 public:
  using Error::Error;
};

/// Vertex index out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Degenerate element geometry (zero area, rank-deficient Gram matrix, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Sparse factorization failed or produced an unacceptable residual.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

}  // namespace sfvem
