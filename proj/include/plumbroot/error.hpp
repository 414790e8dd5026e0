#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plumbroot {

enum class ErrorKind {
  MalformedInput,
  NotATree,
  BadIndex,
  NotNegativeDefinite,
  MoveNotApplicable,
  MoveMismatch,
  GenerationFailed,
  NotCharacteristic,
  NotDeltaParity,
  SeedsExhausted,
  NotStabilized,
  A3Violated,
  Overflow,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Domain error carrying a machine-readable kind; the CLI maps it to a JSON
// error object and exit code 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace plumbroot
