// Error taxonomy for the divided-power calculus library.  Every throwing
// precondition in the public API uses one of these types; the CLI maps
// ConfigError to exit code 2 and everything else to a failed run.
#pragma once

#include <stdexcept>
#include <string>

namespace mpd {

struct CalcError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A multi-index / binomial argument is outside the componentwise range.
struct ComponentOutOfRange : CalcError {
    using CalcError::CalcError;
};

// An operation-specific precondition failed (grade bounds, level bounds, ...).
struct PreconditionViolation : CalcError {
    using CalcError::CalcError;
};

// An exact integer division required by a structure constant failed.
struct DivisibilityViolation : CalcError {
    using CalcError::CalcError;
};

// Element grade does not match the operation's declared grade.
struct GradeMismatch : CalcError {
    using CalcError::CalcError;
};

// Face/degeneracy index outside the simplicial range.
struct IndexOutOfRange : CalcError {
    using CalcError::CalcError;
};

// d o d != 0 or mismatched shapes when assembling a complex.
struct NotAComplex : CalcError {
    using CalcError::CalcError;
};

// A purported map of complexes fails to commute with the differentials.
struct NotChainMap : CalcError {
    using CalcError::CalcError;
};

// Two objects built from incompatible parameter tuples were combined.
struct ParamMismatch : CalcError {
    using CalcError::CalcError;
};

// Source/target live at inconsistent divided-power levels.
struct LevelMismatch : CalcError {
    using CalcError::CalcError;
};

// The unit-coefficient splitting search found no admissible candidate.
struct NoUnitSplitting : CalcError {
    using CalcError::CalcError;
};

// Bad CLI flags / config file / parameter bounds.
struct ConfigError : CalcError {
    using CalcError::CalcError;
};

}  // namespace mpd
