#pragma once

#include <stdexcept>
#include <string>

namespace loopforest {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unreadable input (bad JSON/CSV, missing file).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

/// Input parsed fine but violates a structural invariant of a filtered
/// complex. The message names the violated invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class AllCollinearError : public ValidationError {
 public:
  AllCollinearError() : ValidationError("all points are collinear") {}
};

class DuplicatePointsError : public ValidationError {
 public:
  explicit DuplicatePointsError(const std::string& what)
      : ValidationError(what) {}
};

/// Lookup of a simplex or forest vertex that does not exist.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// A functional cannot be evaluated on the given chain.
class FunctionalError : public Error {
 public:
  using Error::Error;
};

}  // namespace loopforest
