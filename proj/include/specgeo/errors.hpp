#pragma once

#include <stdexcept>
#include <string>

namespace specgeo {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range input (bad config, grid mismatch, non-positive
// weight, violated precondition).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A count was requested at or beyond the completeness cutoff of a spectrum.
class UncertifiedCount : public Error {
 public:
  using Error::Error;
};

// No r-minimal radius exists for the requested product of spheres.
class NoSolution : public Error {
 public:
  using Error::Error;
};

}  // namespace specgeo
