#pragma once

#include <stdexcept>
#include <string>

namespace ymh {

/// Malformed or inconsistent input: shapes, schema, preconditions the caller
/// could have checked.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical stage failed to produce a certified result (non-convergence,
/// degenerate minimum, rank deficiency). `stage()` names the failing step.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace ymh
