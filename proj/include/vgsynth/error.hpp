#pragma once

#include <stdexcept>
#include <string>

namespace vgsynth {

// Base for every error the library raises on bad input or a broken invariant.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class DuplicateRowError : public Error {
 public:
  DuplicateRowError(std::string ticker, std::string date)
      : Error("duplicate row for (" + ticker + ", " + date + ")"),
        ticker_(std::move(ticker)),
        date_(std::move(date)) {}
  const std::string& ticker() const noexcept { return ticker_; }
  const std::string& date() const noexcept { return date_; }

 private:
  std::string ticker_;
  std::string date_;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidWindow : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class SegmentMismatch : public Error {
 public:
  using Error::Error;
};

// Raised when a graph violates a structural guarantee (e.g. an isolated node).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A metric that is undefined for the given input (single-class AUC, etc).
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

}  // namespace vgsynth
