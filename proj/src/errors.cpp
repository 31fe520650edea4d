#include "airan/errors.hpp"

namespace airan {

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::invalid_argument([&] {
        std::string msg;
        for (const auto& issue : issues) {
          if (!msg.empty()) msg += "; ";
          msg += issue.path.empty() ? issue.message
                                    : issue.path + " " + issue.message;
        }
        return msg;
      }()),
      issues_(std::move(issues)) {}

ConfigError::ConfigError(std::string path, std::string message)
    : ConfigError(std::vector<ConfigIssue>{{std::move(path), std::move(message)}}) {}

}  // namespace airan
