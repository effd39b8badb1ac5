#pragma once

#include <stdexcept>
#include <string>

namespace ncdt {

// Bad user-supplied data (configs, diagrams, series JSON). CLI maps this to exit 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated internal invariant. CLI maps this to exit 3.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void check(bool cond, const std::string& msg) {
  if (!cond) throw InternalError(msg);
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

}  // namespace ncdt
