#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shiftlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A query or construction fell outside the window of a finite set.
class WindowError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input makes the requested statistic meaningless (e.g. empty set, zero density).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A hypothesis of the requested check does not hold for the input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Support of a vector left a bilateral window under a shift power.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, std::int64_t witness)
      : Error(what), witness_index(witness) {}
  std::int64_t witness_index;
};

/// A builder cannot realize the requested object within its constraints.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Integer range or memory budget exhausted. `reached` records how far we got.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::int64_t reached_)
      : Error(what), reached(reached_) {}
  std::int64_t reached;
};

/// An internal invariant of a construction failed on concrete data.
class InvariantFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace shiftlab
