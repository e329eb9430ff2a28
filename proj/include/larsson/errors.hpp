#pragma once

#include <stdexcept>
#include <string>

namespace larsson {

// Error taxonomy. The CLI maps these onto exit codes:
//   ConfigError -> 2, ConvergenceError -> 3, InvariantError -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};
struct ConvergenceError : Error {
  using Error::Error;
};
struct InvariantError : Error {
  using Error::Error;
};

struct InvalidParams : ConfigError {
  using ConfigError::ConfigError;
};
struct InternalInconsistency : InvariantError {
  using InvariantError::InvariantError;
};
struct DepthExceeded : ConfigError {
  using ConfigError::ConfigError;
};
struct BadIndex : ConfigError {
  using ConfigError::ConfigError;
};
struct EpsilonTooLarge : ConfigError {
  using ConfigError::ConfigError;
};
struct XOutsideT : ConfigError {
  using ConfigError::ConfigError;
};
struct StepTooCoarse : ConfigError {
  using ConfigError::ConfigError;
};
struct NoConvergence : ConvergenceError {
  using ConvergenceError::ConvergenceError;
};
struct ReducibleKernel : ConvergenceError {
  using ConvergenceError::ConvergenceError;
};
struct NotPositiveBy64 : ConvergenceError {
  using ConvergenceError::ConvergenceError;
};
struct KTooLarge : ConfigError {
  using ConfigError::ConfigError;
};
struct Overflow : ConfigError {
  using ConfigError::ConfigError;
};
struct ParseError : ConfigError {
  using ConfigError::ConfigError;
};
struct UnknownCommand : ConfigError {
  using ConfigError::ConfigError;
};
struct MissingData : ConfigError {
  using ConfigError::ConfigError;
};

}  // namespace larsson
