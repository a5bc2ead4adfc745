#pragma once

#include <stdexcept>
#include <string>

namespace vgkit {

/// Invalid value or violated precondition.
struct ValueError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Mask shape or stride disagreement between operands.
struct ShapeError : ValueError {
  using ValueError::ValueError;
};

/// Candidate set with no predictions.
struct EmptyCandidatesError : ValueError {
  using ValueError::ValueError;
};

/// Two reports that do not cover the same ground-truth sample set.
struct SampleSetMismatchError : ValueError {
  using ValueError::ValueError;
};

/// Malformed file content. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, long line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}

  long line() const noexcept { return line_; }

 private:
  long line_;
};

/// Unreadable or unwritable file.
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vgkit
