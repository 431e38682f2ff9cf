#pragma once

#include <stdexcept>
#include <string>

namespace ouac {

// Error taxonomy mirrored by the CLI exit codes:
// validation/shape -> 2, numerical failure -> 3, I/O -> 4.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : ValidationError {
    using ValidationError::ValidationError;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ouac
