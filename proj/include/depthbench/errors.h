#pragma once

#include <stdexcept>
#include <string>

namespace depthbench {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (bad intrinsics, bad config).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The input is legal but has nothing to evaluate: an empty cloud, a sample
/// with zero jointly valid pixels.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A file on disk does not match the expected format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A text file could not be parsed. Messages carry path, line and column.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A manifest is unusable as a whole: bad schema, duplicate ids, missing
/// files. Raised before any metric is computed.
class ManifestError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver did not reach its termination criterion.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace depthbench
