// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace catcode {

// Domain error hierarchy. Each condition named by what went wrong, not where.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonHermitian : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct NotPSD : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct DegenerateQubit : Error {
    using Error::Error;
};
struct TruncationTooSmall : Error {
    using Error::Error;
};
struct InvalidSpec : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct EmptySlice : Error {
    using Error::Error;
};

} // namespace catcode
