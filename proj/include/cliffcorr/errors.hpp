#pragma once

#include <stdexcept>
#include <string>

namespace cliffcorr {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad files, violated construction axioms
/// (non-associative products, broken group tables, shape mismatches), and
/// domain errors such as division by zero.  CLI exit code 2.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The input is well formed but a hypothesis of the requested computation is
/// not met, or the case is out of supported range: algebras that cannot be
/// certified semisimple, polynomials that do not split, exhausted randomized
/// search budgets, size guardrails.  CLI exit code 3.
class HypothesisFailure : public Error {
 public:
  using Error::Error;
};

/// A statement this library treats as a theorem failed to verify on concrete
/// data.  With valid inputs this indicates an internal defect, never a user
/// error.  CLI exit code 4.
class TheoremCheckFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace cliffcorr
