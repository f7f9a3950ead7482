#pragma once

#include <stdexcept>
#include <string>

namespace p1orbit {

/// Input that violates an operation's stated precondition (repeated points,
/// field mismatch, point outside the variety, bad reduction, ...).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed textual input.
struct parse_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A broken internal invariant; never expected for any input.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace p1orbit
