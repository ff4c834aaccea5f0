#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arbsample {

/// Caller supplied an argument outside an operation's domain.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed edge-list text; carries the 1-based line number.
class ParseError : public InputError {
public:
  ParseError(std::size_t line, const std::string &what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Requested object exceeds a supported size limit.
class SizeError : public InputError {
public:
  using InputError::InputError;
};

/// A caller-side promise turned out false at runtime (e.g. dmax too small).
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Retry loop ran out of attempts without a success.
class ExhaustedError : public std::runtime_error {
public:
  explicit ExhaustedError(std::size_t attempts)
      : std::runtime_error("no edge returned after " + std::to_string(attempts) +
                           " attempts"),
        attempts_(attempts) {}

  std::size_t attempts() const { return attempts_; }

private:
  std::size_t attempts_;
};

} // namespace arbsample
