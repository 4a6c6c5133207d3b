#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phonostad {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number (0 when not line-oriented).
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MissingWordError : public Error {
 public:
  explicit MissingWordError(const std::string& word)
      : Error("word not found: '" + word + "'"), word_(word) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

class LoadError : public Error {
 public:
  using Error::Error;
};

/// Pronunciation without any vowel nucleus.
class DegeneratePronunciationError : public Error {
 public:
  using Error::Error;
};

class MappingError : public Error {
 public:
  using Error::Error;
};

class TokenizationError : public Error {
 public:
  using Error::Error;
};

class ProjectionError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input that makes a quantity undefined (empty reference, empty group, n = 0 ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Not enough candidates to draw the requested sample; reports what is achievable.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class DegenerateTestError : public Error {
 public:
  using Error::Error;
};

class TemplateError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace phonostad
