#pragma once

#include <stdexcept>
#include <string>

namespace idnc {

// CLI exit-code mapping: ConfigError -> 1, CapacityError -> 2, InternalError -> 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InternalError(msg);
}

}  // namespace idnc
