#pragma once

#include <stdexcept>
#include <string>

namespace xy {

// Thrown when an iterative numerical routine fails to reach its tolerance.
// Carries the error estimate actually achieved so callers can report it.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error estimate " +
                           std::to_string(achieved) + ")"),
        achieved_error(achieved) {}
  double achieved_error;
};

}  // namespace xy
