#pragma once

#include <stdexcept>
#include <string>

namespace qnlab {

// Exit-code contract of the CLI: 2 config, 3 numerical contract, 4 I/O.

/// Invalid configuration or parameter (bad grid size, dt rule violation, ...).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical precondition or audit failed (nonzero-mean source, sync loss, ...).
class ContractError : public std::runtime_error {
public:
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

/// File or serialization failure.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qnlab
