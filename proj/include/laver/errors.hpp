#pragma once

#include <stdexcept>

namespace laver {

/// Thrown when a requested computation exceeds a configured size cap
/// (table order, dense matrix element budget, poset size, ...).
struct size_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by readers on malformed input (bad magic, truncation,
/// structurally invalid rows, unparsable JSON payloads).
struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace laver
