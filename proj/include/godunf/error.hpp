#pragma once

#include <stdexcept>
#include <string>

namespace godunf {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: unknown identifiers, bad documents,
// invalid configurations, transitions fired while disabled.
class InputError : public Error {
  public:
    using Error::Error;
};

// Raised by syntactic net parsing; carries a 1-based position.
class ParseError : public InputError {
  public:
    ParseError (std::size_t line, std::size_t column, const std::string &what)
        : InputError ("line " + std::to_string (line) + ", column " +
                      std::to_string (column) + ": " + what),
          line_ (line), column_ (column) {}

    std::size_t line () const { return line_; }
    std::size_t column () const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

// The net is not 1-safe (or could not be verified as such).
class UnsafeNetError : public Error {
  public:
    using Error::Error;
};

// A configured cap (state bound, alt cap, iteration cap, ...) was hit.
class ResourceLimitError : public Error {
  public:
    using Error::Error;
};

} // namespace godunf
