#pragma once

#include <stdexcept>
#include <string>

namespace squeezelab {

/// Raised when a Fock-space truncation cannot hold a state to the required
/// norm tolerance.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for invalid parameter sets (non-unitary mixers, bad ranges, ...).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace squeezelab
