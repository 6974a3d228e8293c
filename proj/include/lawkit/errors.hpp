#pragma once

#include <stdexcept>
#include <string>

namespace lawkit {

/// Malformed structure: shape mismatch, bad poset, incoherent coordinates.
class structural_error : public std::runtime_error {
public:
  explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

/// Violated operation precondition (non-Hermitian input, empty family, ...).
class precondition_error : public std::runtime_error {
public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

/// Config text rejected; the message carries the field location.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// A chain node beyond the materialized horizon was requested.
class horizon_error : public std::runtime_error {
public:
  explicit horizon_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lawkit
