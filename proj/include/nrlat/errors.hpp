#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nrlat {

// Invalid or incomplete configuration data (profiles, knobs, golden files).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
  ConfigError(const std::string& what, std::vector<std::string> all)
      : std::runtime_error(what), problems_(std::move(all)) {}

  // Every violation found, in discovery order. Empty when only one was known.
  const std::vector<std::string>& problems() const { return problems_; }

private:
  std::vector<std::string> problems_;
};

// Caller combined otherwise valid inputs in a way the operation does not accept.
class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Scenario outside the evaluated envelope, e.g. TDD with a 2-symbol TTI.
class UnsupportedScenario : public ConfigError {
public:
  explicit UnsupportedScenario(const std::string& what) : ConfigError(what) {}
};

}  // namespace nrlat
