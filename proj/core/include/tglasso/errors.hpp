#pragma once

#include <stdexcept>
#include <string>

namespace tglasso {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A Cholesky pivot was non-positive: the matrix is not positive definite.
class NotPositiveDefinite : public Error {
public:
  explicit NotPositiveDefinite(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
public:
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

/// An iterative eigenvalue scheme exceeded its iteration cap.
class NoConvergence : public Error {
public:
  explicit NoConvergence(const std::string& what) : Error(what) {}
};

class InvalidParams : public Error {
public:
  explicit InvalidParams(const std::string& what) : Error(what) {}
};

class InvalidConfig : public Error {
public:
  explicit InvalidConfig(const std::string& what) : Error(what) {}
};

/// Backtracking shrank the step below its floor without an acceptable iterate.
class LineSearchFailed : public Error {
public:
  explicit LineSearchFailed(const std::string& what) : Error(what) {}
};

class TooFewPoints : public Error {
public:
  explicit TooFewPoints(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace tglasso
