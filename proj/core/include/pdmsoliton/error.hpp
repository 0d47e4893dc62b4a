#pragma once

#include <stdexcept>
#include <string>

namespace pdmsoliton {

// Base of every exception thrown by the library. The subclasses map onto
// the CLI exit codes (usage 2, I/O 3, numerical guard 4).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Precondition or argument violation (bad grid, unknown scheme, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// A numerical safeguard tripped: blow-up, unstable step, node in a
// supposedly nodeless function, non-normalizable zero mode.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace pdmsoliton
