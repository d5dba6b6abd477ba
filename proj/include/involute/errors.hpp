#pragma once

#include <stdexcept>
#include <string>

namespace involute {

// Base of every error the library raises.  The CLI maps the families below
// onto its exit codes (input error, check failure, resource cap).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong shapes, bad JSON, arity mismatches.
struct InputError : Error {
  using Error::Error;
};

struct DimensionMismatch : InputError {
  using InputError::InputError;
};

struct ParseError : InputError {
  using InputError::InputError;
};

// A linear system has no solution.
struct Inconsistent : Error {
  using Error::Error;
};

// Sampled flags disagree; raise the sample count or coefficient range.
struct UnstableGenericity : Error {
  using Error::Error;
};

// A configured size or order cap was hit.
struct CapExceeded : Error {
  using Error::Error;
};

// A mathematical precondition or check failed.
struct CheckFailed : Error {
  using Error::Error;
};

struct NotInvolutive : CheckFailed {
  using CheckFailed::CheckFailed;
};

struct NotInImage : CheckFailed {
  using CheckFailed::CheckFailed;
};

struct NotTwoAcyclic : CheckFailed {
  using CheckFailed::CheckFailed;
};

struct NotRegular : CheckFailed {
  using CheckFailed::CheckFailed;
};

struct BadDecomposition : CheckFailed {
  using CheckFailed::CheckFailed;
};

struct JacobiViolation : CheckFailed {
  using CheckFailed::CheckFailed;
};

struct InconsistentData : CheckFailed {
  using CheckFailed::CheckFailed;
};

struct StructureViolation : CheckFailed {
  using CheckFailed::CheckFailed;
};

}  // namespace involute
