#pragma once

#include <stdexcept>
#include <string>

namespace cutlattice {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad lengths, ranges,
/// inconsistent cuts passed where a consistent one is required).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data: cycles, forward references, duplicate ids.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An event reached the partitioner before one of its dependencies.
class OrderingError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (stored-cut budget) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace cutlattice
