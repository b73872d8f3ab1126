// Error types shared by every grpeq module.

#ifndef GRPEQ_ERROR_HPP_
#define GRPEQ_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace grpeq {

// Base of all errors raised by the library. The CLI maps it to exit code 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands belong to different groups.
struct GroupMismatch : Error {
  using Error::Error;
};

// An operation's precondition does not hold for its input.
struct PreconditionError : Error {
  using Error::Error;
};

// A configured search cap (radius, length, degree) was exceeded.
struct CapExceeded : Error {
  using Error::Error;
};

// A configuration value or command-line option is invalid.
struct ConfigError : Error {
  using Error::Error;
};

// Malformed literal or script; carries a 1-based position when known.
struct ParseError : Error {
  ParseError(const std::string& msg, int line = 0, int column = 0)
      : Error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) +
                             ": " + msg
                       : msg),
        message(msg), line(line), column(column) {}
  std::string message;
  int line;
  int column;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

template <class E = PreconditionError>
inline void require(bool cond, const std::string& msg) {
  if (!cond)
    throw E(msg);
}

} // namespace grpeq

#endif
