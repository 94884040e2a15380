#pragma once

#include <stdexcept>

namespace alloclab {

// Shapes or coordinate counts do not match.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A parameter is outside its admissible range.
struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An exact computation would exceed its configured enumeration cap.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An allocation violates a structural requirement (e.g. two large goods
// on one agent where the construction assumes at most one).
struct InvalidAllocationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed input files, unparsable flags or config values.
struct BadConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace alloclab
