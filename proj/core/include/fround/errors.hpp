#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fround {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scenario configuration violates an invariant. The message names the field.
struct InvalidConfig : Error {
  using Error::Error;
};

/// A file could not be read or written.
struct IoError : Error {
  using Error::Error;
};

/// An operation that needs at least one element got none.
struct EmptyInput : Error {
  using Error::Error;
};

/// Detection needs at least two distinct senders besides the guard.
struct InsufficientVehicles : Error {
  using Error::Error;
};

/// A numeric argument is outside its domain.
struct InvalidArgument : Error {
  using Error::Error;
};

/// Probability outside [0,1] or a negative trial count.
struct InvalidProbability : Error {
  using Error::Error;
};

/// Throughput requested over a zero-length interval.
struct ZeroDuration : Error {
  using Error::Error;
};

/// A trace file row could not be parsed.
struct ParseError : Error {
  ParseError(std::size_t line_no, const std::string& reason)
      : Error("parse error at line " + std::to_string(line_no) + ": " + reason), line(line_no) {}
  std::size_t line;
};

/// Per-vehicle timestamps in a trace must strictly increase.
struct NonMonotonicTime : Error {
  NonMonotonicTime(std::uint32_t vehicle, std::int64_t t)
      : Error("non-monotonic time for vehicle " + std::to_string(vehicle) +
              " at t=" + std::to_string(t) + " ms"),
        id(vehicle),
        t_ms(t) {}
  std::uint32_t id;
  std::int64_t t_ms;
};

}  // namespace fround
