#pragma once

#include <stdexcept>
#include <string>

namespace stratrelease {

// Bad input: malformed instance, excluded deployed classifier, empty release, ...
// CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a hard capability guard (e.g. brute force beyond n = 20).
// CLI maps this to exit code 4.
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stratrelease
