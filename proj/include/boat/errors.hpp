#pragma once

#include <stdexcept>
#include <string>

namespace boat {

/// Invalid argument for a mathematical operation (bad label, non-unitary
/// matrix, non-physical block, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The operation is only defined for a particular level count.
class UnsupportedDimension : public DomainError {
public:
  using DomainError::DomainError;
};

/// A dense full-space object would exceed the configured size cap.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent numerical settings, e.g. too few samples for a spectrum.
class ConfigurationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace boat
