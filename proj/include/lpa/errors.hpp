#ifndef LPA_ERRORS_HPP
#define LPA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lpa {

// Base for all library errors. Subclasses map onto CLI exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (graph files, expressions, polynomials).
struct ParseError : Error {
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  explicit ParseError(const std::string& msg) : Error(msg), line(0), column(0) {}
  int line;
  int column;
};

// Structurally valid input that violates a precondition (unknown identifier,
// non-hereditary set where a hereditary one is required, field mismatch, ...).
struct ValidationError : Error {
  using Error::Error;
};

// A configured bound was exceeded (vertex caps, cycle caps, search budgets).
struct ResourceError : Error {
  using Error::Error;
};

// The request is understood but outside what the implementation decides
// (e.g. rational irreducibility above degree 3).
struct UnsupportedError : Error {
  using Error::Error;
};

}  // namespace lpa

#endif
