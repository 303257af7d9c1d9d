#pragma once

#include <stdexcept>
#include <string>

namespace facloc {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation (off-grid report,
// phi of the zero profile, coordinate outside the cycle, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The mechanism is not defined for the given profile (PCD with even n).
class UnsupportedMechanism : public Error {
 public:
  using Error::Error;
};

// Invalid search or command configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace facloc
