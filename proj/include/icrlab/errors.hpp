#pragma once

#include <stdexcept>
#include <string>

namespace icrlab {

// Requested nulling at K or more receivers: the null space of the stacked
// channel rows is almost surely empty.
struct InfeasibleNulling : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The selected projector column vanished. Probability-zero under continuous
// fading; callers may retry with another null-space basis column.
struct DegenerateBeam : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Linear system singular within the rank tolerance.
struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A CSIT pattern does not have the two-phase structure the scheme requires.
struct PatternError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A combination row failed to match any channel row up to a scalar.
struct StructuralViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed-form region solution left the unit box; the LP must be used instead.
struct ActiveSetViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace icrlab
