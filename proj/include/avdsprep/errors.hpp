#pragma once

#include <stdexcept>
#include <string>

namespace avdsprep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// PNM header is not a supported P5/P6 header or its dimensions are invalid.
class MalformedHeader : public Error {
 public:
  using Error::Error;
};

/// PNM payload is shorter than the header promises.
class Truncated : public Error {
 public:
  using Error::Error;
};

class UnsupportedMaxval : public Error {
 public:
  using Error::Error;
};

/// A configuration value violates its documented range.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Plane or Image invariants (sizes, sample range) do not hold.
class InvalidImage : public Error {
 public:
  using Error::Error;
};

}  // namespace avdsprep
