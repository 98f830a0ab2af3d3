#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace hardy {

// Bad user input: out-of-range parameters, wrong case for an operation,
// malformed grids. The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure ran but could not deliver its postcondition.
// The CLI maps these to exit code 3 and prints detail() as the body.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(std::string kind, const std::string& what,
                   nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(what), kind_(std::move(kind)), detail_(std::move(detail)) {}

  const std::string& kind() const noexcept { return kind_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  std::string kind_;
  nlohmann::json detail_;
};

}  // namespace hardy
