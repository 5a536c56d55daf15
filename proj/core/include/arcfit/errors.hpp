#pragma once

#include <stdexcept>
#include <string>

namespace arcfit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicatePoints : Error { using Error::Error; };
struct TooFewPoints : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct DenominatorZero : Error { using Error::Error; };
struct Inadmissible : Error { using Error::Error; };
struct NegativeBeta : Error { using Error::Error; };
struct CollinearControls : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct GapUnfillable : Error { using Error::Error; };
struct DeltaTooLarge : Error { using Error::Error; };
struct DeltaTooSmall : Error { using Error::Error; };
struct NeighborTooShort : Error { using Error::Error; };
struct NoFilletExists : Error { using Error::Error; };
struct InsufficientPoints : Error { using Error::Error; };
struct NoIntersection : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };
struct DisconnectedCurve : Error { using Error::Error; };

struct ParseError : Error {
  ParseError(const std::string& msg, int line_arg)
      : Error(msg + " (line " + std::to_string(line_arg) + ")"), line(line_arg) {}
  int line = 0;
};

struct DuplicateConsecutive : ParseError {
  using ParseError::ParseError;
};

}  // namespace arcfit
