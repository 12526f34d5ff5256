#pragma once

#include <stdexcept>
#include <string>

namespace ecsim {

// State and basis were built over different mode ladders.
struct LadderMismatchError : std::invalid_argument {
  explicit LadderMismatchError(const std::string& what)
      : std::invalid_argument(what) {}
};

// A basis tuple violates the fixed-energy constraint; signals a construction bug.
struct InconsistentBasisError : std::runtime_error {
  explicit InconsistentBasisError(const std::string& what)
      : std::runtime_error(what) {}
};

// Subspace probability is zero, so the conditioned mixture is undefined.
struct UndefinedMixtureError : std::runtime_error {
  explicit UndefinedMixtureError(const std::string& what)
      : std::runtime_error(what) {}
};

// delta_beta = 0 collapses the cat superposition to the zero vector.
struct DegenerateCatError : std::invalid_argument {
  explicit DegenerateCatError(const std::string& what)
      : std::invalid_argument(what) {}
};

// The conditioning window carries no probability on the reference state.
struct ZeroSupportError : std::runtime_error {
  explicit ZeroSupportError(const std::string& what)
      : std::runtime_error(what) {}
};

// Every optimizer restart ended in a degenerate or invalid point.
struct OptimizationError : std::runtime_error {
  explicit OptimizationError(const std::string& what)
      : std::runtime_error(what) {}
};

// An operation requiring a normalized state received one that is not.
struct NotNormalizedError : std::invalid_argument {
  explicit NotNormalizedError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Malformed or inconsistent run configuration.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ecsim
