#pragma once

#include <stdexcept>
#include <string>

namespace sbcpe {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A GameSpec violates its structural invariants or the w_i*u_i(a) < 1
// assumption the message rule depends on.
struct ValidationError : Error {
  using Error::Error;
};

// Joint action (or joint index) outside the game's action space.
struct InvalidActionError : Error {
  using Error::Error;
};

// An operation needed a feasible action but the feasible set is empty.
struct EmptyFeasibleSetError : Error {
  using Error::Error;
};

// Generic unmet precondition: M < 2, non-unique maximizer, epsilon out of
// (0,1), t = 0, out-of-order update, double commit, K > T, ...
struct PreconditionError : Error {
  using Error::Error;
};

struct InadmissibleEpsilonError : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct HorizonTooShortError : PreconditionError {
  using PreconditionError::PreconditionError;
};

}  // namespace sbcpe
