#pragma once

#include <stdexcept>
#include <string>

namespace regraph {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SelfLoopError : Error {
    using Error::Error;
};

struct VertexOutOfRangeError : Error {
    using Error::Error;
};

struct DegreeTooSmallError : Error {
    using Error::Error;
};

struct InvalidDegreeError : Error {
    using Error::Error;
};

struct ParityViolationError : Error {
    using Error::Error;
};

struct TooLargeError : Error {
    using Error::Error;
};

struct NotRegularError : Error {
    using Error::Error;
};

struct DisconnectedError : Error {
    using Error::Error;
};

struct MixedParametersError : Error {
    using Error::Error;
};

struct InterruptedError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace regraph
