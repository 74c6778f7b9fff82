#ifndef MIMEMA_ERROR_H_
#define MIMEMA_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mimema {

// Base class for every error raised by the library. The message starts with
// a short stable tag ("empty token", "invalid acceptor", ...) that callers
// and tests can match on.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input. Carries the 1-based line number of the offending
// line; the message is prefixed with "line N: ".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mimema

#endif  // MIMEMA_ERROR_H_
