#pragma once

#include <stdexcept>
#include <string>

namespace arbor {

// A request exceeded a configured bound (depth, points per level, group order).
// Operations fail loudly with this instead of silently truncating.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal cross-check failed.  This signals a bug in the engine, never bad
// user input; the CLI maps it to its own exit code.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

// Malformed textual input or out-of-range parameters.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace arbor
