#pragma once

#include <stdexcept>

namespace oscprof {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed network file; the message carries "source:line" and the field name.
struct ParseError : Error {
  using Error::Error;
};

// Operation invoked outside its mathematical domain (delta >= 0, x = 0 bias,
// heterogeneous rates where homogeneity is required, ...).
struct PreconditionError : Error {
  using Error::Error;
};

// An iterative scheme stopped short of its tolerance; the message carries the
// best residual reached.
struct ConvergenceError : Error {
  using Error::Error;
};

// Simulation or profile extraction failure: state blow-up, no oscillation
// detected, period not settled.
struct SimulationError : Error {
  using Error::Error;
};

}  // namespace oscprof
