#pragma once

#include <stdexcept>
#include <string>

namespace mrtlb {

/// A parameter left its admissible range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The sixth-order accuracy conditions have no admissible real root.
class NoRealRoot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was invoked on an object that is not ready for it.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnsupportedBoundary : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mrtlb
