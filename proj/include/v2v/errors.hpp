#pragma once

#include <stdexcept>
#include <string>

namespace v2v {

// Configuration file / parameter problems. The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runtime failures inside the simulator. The CLI maps these to exit code 1.
class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace v2v
