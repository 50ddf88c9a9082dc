#ifndef EINSTAB_ERROR_HPP
#define EINSTAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace einstab {

// Base of everything the library throws. The C API maps each subclass onto
// one status code (see einstab.h).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text: rationals, signomials, space files.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid input: arity mismatch, bad index, invalid space.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A family parameter outside its validity range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Evaluation outside the metric cone or an exact evaluation that would need
// an irrational power.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Iterative method gave up (Newton budget, witness search, flow rejections).
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace einstab

#endif
