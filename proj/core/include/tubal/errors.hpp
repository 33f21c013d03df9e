#pragma once

#include <stdexcept>
#include <string>

namespace tubal {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimMismatch : Error {
  using Error::Error;
};
struct SymmetryViolation : Error {
  using Error::Error;
};
struct RankOutOfRange : Error {
  using Error::Error;
};
struct RateOutOfRange : Error {
  using Error::Error;
};
struct EmptyMask : Error {
  using Error::Error;
};
struct NonFiniteInput : Error {
  using Error::Error;
};
struct ZeroReference : Error {
  using Error::Error;
};
struct TooFewPoints : Error {
  using Error::Error;
};
struct FreqAboveNyquist : Error {
  using Error::Error;
};
struct PlaneOutOfVolume : Error {
  using Error::Error;
};
struct ReadError : Error {
  using Error::Error;
};
struct WriteError : Error {
  using Error::Error;
};

}  // namespace tubal
