#pragma once

#include <stdexcept>
#include <string>

namespace relaysec {

// Raised when a closed-form coefficient degenerates because two fading
// parameters (or derived pole locations) are too close: |den| < 1e-9 relative.
// Callers may perturb the offending mean by ~1 ppm and retry.
struct SingularityError : std::runtime_error {
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a conditional Monte Carlo estimate accepts too few trials to be
// statistically meaningful.
struct StarvationError : std::runtime_error {
  explicit StarvationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace relaysec
