#pragma once

#include <stdexcept>
#include <string>

namespace pptlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad input: mixed group instances, malformed element syntax, invalid config.
struct ValidationError : Error {
    using Error::Error;
};

/// An enumeration hit its memory/size budget.
struct ResourceError : Error {
    using Error::Error;
};

/// A bounded search ended without a provable answer (never a wrong number).
struct UndeterminedError : Error {
    using Error::Error;
};

}  // namespace pptlab
