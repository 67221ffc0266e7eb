#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuzzsig {

/// Base error. `stage()` names the pipeline stage that raised it
/// ("parse", "aggregate", "indicators", "tuning", "fuzzify", "inference", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Malformed input text. `line()` is 1-based and counts the header.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("parse", "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InsufficientHistory : public Error {
 public:
  InsufficientHistory(std::string indicator, std::size_t required, std::size_t available)
      : Error("indicators", "insufficient history for " + indicator + ": need " +
                                std::to_string(required) + " periods, have " +
                                std::to_string(available)),
        indicator_(std::move(indicator)),
        required_(required),
        available_(available) {}

  const std::string& indicator() const noexcept { return indicator_; }
  std::size_t required() const noexcept { return required_; }
  std::size_t available() const noexcept { return available_; }

 private:
  std::string indicator_;
  std::size_t required_;
  std::size_t available_;
};

}  // namespace fuzzsig
