#pragma once

#include <stdexcept>
#include <string>

namespace degsheffer {

/// Base of every error raised by the library. Each subclass names one
/// failure contract so callers (and the CLI) can map it to a response.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnboundVariable : public Error {
public:
    using Error::Error;
};

class NonUnitConstantTerm : public Error {
public:
    using Error::Error;
};

class NonzeroConstantTerm : public Error {
public:
    using Error::Error;
};

class OrderExceeded : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class UnsamplableProvider : public Error {
public:
    using Error::Error;
};

class UnknownIdentity : public Error {
public:
    using Error::Error;
};

class BadParams : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace degsheffer
