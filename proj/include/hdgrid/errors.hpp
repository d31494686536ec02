#pragma once

#include <stdexcept>
#include <string>

namespace hdgrid {

// Runtime failure of a library operation (bad geometry, violated precondition).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent run configuration. The CLI maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hdgrid
