#ifndef ROUGHLOGO_ERROR_HPP
#define ROUGHLOGO_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace roughlogo {

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data is present but malformed (bad image header, bad CSV row, ...).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Feature table row that violates the schema. Carries the 1-based line.
class ParseError : public FormatError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : FormatError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A traced contour broke the angle-sum or containment law.
class TracingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace roughlogo

#endif  // ROUGHLOGO_ERROR_HPP
