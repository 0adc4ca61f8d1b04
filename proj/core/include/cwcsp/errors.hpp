#pragma once

#include <stdexcept>
#include <string>

namespace cwcsp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document or token.
class ParseError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its contract.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A configured enumeration or search cap was exceeded.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// Bounded searches ran out without settling a classification.
class InconclusiveError : public Error {
public:
    using Error::Error;
};

}  // namespace cwcsp
