#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace raas {

// Caller mistakes: malformed input, arity mismatches, out-of-range arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse diagnostic with a 1-based source position.
struct ParseError : UsageError {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& message)
      : UsageError("line " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + message),
        line(line_),
        column(column_) {}
};

// An operation refused to run because its state space exceeds the configured
// budget; `attempted` carries the estimated size that tripped the guard.
struct ResourceError : std::runtime_error {
  std::uint64_t attempted;
  ResourceError(const std::string& message, std::uint64_t attempted_)
      : std::runtime_error(message), attempted(attempted_) {}
};

// A broken internal invariant; never expected on any input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace raas
