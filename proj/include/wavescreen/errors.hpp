#pragma once

#include <stdexcept>
#include <string>

namespace wavescreen {

/// Bad caller input: wrong arity, off-constraint arguments, malformed ids.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or incomplete system/config description.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A known relation was not recovered by the rank solver. Signals a sampling
/// or basis bug rather than a property of the manifold.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scan or sampler produced no admissible points at all.
class EmptyRegionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wavescreen
