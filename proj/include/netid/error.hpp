#ifndef NETID_ERROR_HPP
#define NETID_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netid {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad shapes, unparsable files, out-of-range indices.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class ParseError : public InvalidInput {
public:
    ParseError(const std::string& what, std::size_t byte)
        : InvalidInput(what), byte_(byte) {}
    std::size_t byte() const noexcept { return byte_; }

private:
    std::size_t byte_;
};

/// The evaluation point is a root of a denominator.
class PoleAtPoint : public Error {
public:
    using Error::Error;
};

class NotProper : public Error {
public:
    using Error::Error;
};

class SingularStructure : public Error {
public:
    using Error::Error;
};

/// The model set does not satisfy the gate required by the requested check.
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

class MissingConcreteModel : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

class NotParametrized : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class InstantiationFailed : public Error {
public:
    using Error::Error;
};

} // namespace netid

#endif
