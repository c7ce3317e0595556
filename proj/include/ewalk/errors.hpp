#pragma once

#include <stdexcept>
#include <string>

namespace ewalk {

// Base error. `kind()` is a short machine-readable tag ("support-overflow",
// "no-decay", ...) surfaced by the CLI in its JSON error detail.
class error : public std::runtime_error {
 public:
  error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Invalid input: malformed fields, non-primitive roots, bad schedules.
class input_error : public error {
 public:
  using error::error;
};

// A computation that cannot deliver a trustworthy answer with the given
// resources (lattice cap, digits, budget).
class numerical_error : public error {
 public:
  using error::error;
};

}  // namespace ewalk
