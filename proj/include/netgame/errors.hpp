#pragma once

#include <stdexcept>
#include <string>

namespace netgame {

/// Base class for all netgame errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Asymmetric : Error {
  using Error::Error;
};
struct NonzeroDiagonal : Error {
  using Error::Error;
};
struct OutOfBox : Error {
  using Error::Error;
};
struct NotSymmetric : Error {
  using Error::Error;
};
struct SingularSystem : Error {
  using Error::Error;
};
struct PhiZero : Error {
  using Error::Error;
};
struct BadSize : Error {
  using Error::Error;
};
struct BadIndex : Error {
  using Error::Error;
};
struct NonConvergence : Error {
  using Error::Error;
};
struct BudgetExhausted : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};
struct PreconditionViolated : Error {
  using Error::Error;
};
struct DegenerateEigenvalue : Error {
  using Error::Error;
};
struct BoundaryGhat : Error {
  using Error::Error;
};
struct MissingGhat : Error {
  using Error::Error;
};
struct AllZeroWithoutContext : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace netgame
