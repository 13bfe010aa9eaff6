#pragma once

#include <stdexcept>
#include <string>

namespace motkit {

// Base class for all recoverable engine errors. The CLI maps subclasses to
// exit codes (usage 1, data 2, internal invariant 3).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A box with non-positive width/height where positive area is required.
struct InvalidBoxError : Error {
  using Error::Error;
};

// A patch candidate that does not intersect the frame rectangle.
struct OutOfFrameError : Error {
  using Error::Error;
};

// Non-finite values where finite arithmetic is required.
struct NumericError : Error {
  using Error::Error;
};

// Input outside the documented domain (normalization, probabilities, ranges).
struct DomainError : Error {
  using Error::Error;
};

// Violated cross-object invariant (duplicate keys, missing provenance).
struct ConsistencyError : Error {
  using Error::Error;
};

// Frame indices fed to the tracker out of order.
struct SequencingError : Error {
  using Error::Error;
};

// Motion-model prediction collapsed to a non-positive-size box.
struct DegeneratePredictionError : Error {
  using Error::Error;
};

// Malformed text input; carries the 1-based line number.
struct ParseError : Error {
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_number(line) {}
  std::size_t line_number;
};

struct IoError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

// Metric requested over an empty ground-truth set.
struct UndefinedMetricError : Error {
  using Error::Error;
};

}  // namespace motkit
