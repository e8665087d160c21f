#pragma once

#include <stdexcept>
#include <string>

namespace tea {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (XML, CoNLL-U, question files). Carries a 1-based line
/// number when known, 0 otherwise.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A reference to an entity id that does not exist, or a mention that cannot
/// be placed on the token stream.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Broken document or tree structure (missing DCT, several roots, cycles).
class StructuralError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t epoch, double learning_rate)
      : Error("training diverged (non-finite loss) at epoch " + std::to_string(epoch) +
              " with learning rate " + std::to_string(learning_rate)),
        epoch_(epoch),
        learning_rate_(learning_rate) {}
  std::size_t epoch() const { return epoch_; }
  double learning_rate() const { return learning_rate_; }

 private:
  std::size_t epoch_;
  double learning_rate_;
};

/// A required input file or directory is missing or unreadable.
class PathError : public Error {
 public:
  using Error::Error;
};

/// An evaluated pair that the gold annotation does not cover.
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// Violated precondition of an operation (bad arguments, untrained models).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace tea
