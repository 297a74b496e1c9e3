#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace zem {

/// An argument lies outside the domain an operation is defined on.
class InputDomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Peukert calibration inputs that would imply an exponent below 1.
class CalibrationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One or more configuration constraints are violated. Carries every
/// violation, not only the first one found.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  explicit ConfigError(const std::string& violation)
      : ConfigError(std::vector<std::string>{violation}) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Collects violations and throws them together.
class Violations {
 public:
  void require(bool ok, std::string message) {
    if (!ok) items_.push_back(std::move(message));
  }
  void add(std::string message) { items_.push_back(std::move(message)); }
  void merge(const Violations& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  }
  bool empty() const noexcept { return items_.empty(); }
  const std::vector<std::string>& items() const noexcept { return items_; }
  void throw_if_any() const {
    if (!items_.empty()) throw ConfigError(items_);
  }

 private:
  std::vector<std::string> items_;
};

}  // namespace zem
