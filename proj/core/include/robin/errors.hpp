#pragma once

#include <stdexcept>
#include <string>

namespace robin {

// Invalid user-supplied configuration (unknown key, bad range, unknown family).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated an API precondition (dimension mismatch, length mismatch).
class ContractError : public std::logic_error {
  public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

// A linear system is too ill-conditioned to invert reliably.
class SingularError : public std::runtime_error {
  public:
    explicit SingularError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace robin
