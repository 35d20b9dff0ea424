#pragma once

#include <stdexcept>
#include <string>

namespace privfn {

class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input document; the message carries the offending path.
class ParseError : public Error {
    using Error::Error;
};

// A configured size cap was exceeded (alphabets, block outcomes, enumeration budgets).
class CapError : public Error {
    using Error::Error;
};

// Arguments outside a documented precondition (index not in rect, shape mismatch, ...).
class DomainError : public Error {
    using Error::Error;
};

} // namespace privfn
