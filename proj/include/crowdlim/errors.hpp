#pragma once

#include <stdexcept>
#include <string>

namespace crowdlim {

/// Thrown when an argument violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what_arg) : std::invalid_argument(what_arg) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace crowdlim
