#pragma once

#include <stdexcept>
#include <string>

namespace aqc {

// Error taxonomy shared by the library and the CLI exit-code contract:
// I/O -> 1, validation/parameter -> 2, capacity/size -> 3, numerical -> 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Malformed input documents (carries a human-readable location).
class ParseError : public Error {
public:
    using Error::Error;
};

// Out-of-range identifiers (vertex endpoints, site coordinates).
class RangeError : public Error {
public:
    using Error::Error;
};

// Bad argument values (non-positive penalty, even repetition count, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Dimension mismatches between containers that must line up.
class ShapeError : public Error {
public:
    using Error::Error;
};

// A precondition on a value produced elsewhere does not hold.
class ContractError : public Error {
public:
    using Error::Error;
};

// Instance exceeds an oracle or solver cap.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

// Placement/routing ran out of lattice resources.
class CapacityError : public Error {
public:
    using Error::Error;
};

// An iterative numerical method failed to meet its tolerance.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace aqc
