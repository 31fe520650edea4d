#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace airan {

/// A model input outside the domain of an equation (zero cost, overhead >= 1,
/// all-zero profile, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A data file that cannot be read or parsed. The message names the file and,
/// where applicable, the offending row.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One rejected configuration field.
struct ConfigIssue {
  std::string path;  // dotted field path, e.g. "ran.busy_hour_factor"
  std::string message;
};

/// Scenario configuration rejected during validation. Carries every issue
/// found, not only the first.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  ConfigError(std::string path, std::string message);

  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

}  // namespace airan
