#pragma once

#include <stdexcept>
#include <string>

namespace soflab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonUnitDeterminant : public Error {
public:
    using Error::Error;
};

/// A computation would exceed its configured element/subset budget.
class ScaleExceeded : public Error {
public:
    using Error::Error;
};

class UnknownFamily : public Error {
public:
    using Error::Error;
};

class UnknownLabel : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class NotRegular : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

/// The supplied vertex map is not a label-preserving graph covering.
/// The message carries a witness vertex/label.
class NotACovering : public Error {
public:
    using Error::Error;
};

class MismatchedModel : public Error {
public:
    using Error::Error;
};

class NotInjective : public Error {
public:
    using Error::Error;
};

class MismatchedRanks : public Error {
public:
    using Error::Error;
};

class IncompleteMap : public Error {
public:
    using Error::Error;
};

class UndefinedProjection : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}
