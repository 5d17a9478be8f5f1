#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace col {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A feature cannot be computed for a document (zero tokens, no predicates, ...).
class FeatureUndefinedError : public Error {
 public:
  FeatureUndefinedError(std::string feature, const std::string& reason)
      : Error("feature '" + feature + "' undefined: " + reason),
        feature_(std::move(feature)) {}
  const std::string& feature() const { return feature_; }

 private:
  std::string feature_;
};

class DegenerateColumnError : public Error {
 public:
  explicit DegenerateColumnError(std::string column)
      : Error("degenerate column '" + column + "' (zero variance)"),
        column_(std::move(column)) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

}  // namespace col
