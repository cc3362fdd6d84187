#pragma once

#include <stdexcept>
#include <string>

namespace plexsim {

// Invalid or inconsistent input (schema violations, unphysical parameters).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure during propagation or root finding.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace plexsim
