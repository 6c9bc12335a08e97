#ifndef GREENRING_ERROR_HPP
#define GREENRING_ERROR_HPP

#include <stdexcept>
#include <string>

namespace greenring {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Malformed textual input: group descriptors, JSON documents, CLI values.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what_arg) : Error(what_arg) {}
};

/// Structurally well-formed input that violates a mathematical contract
/// (non-monic modulus, conductor mismatch, orthogonality failure, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what_arg) : Error(what_arg) {}
};

/// A desk-scale resource cap was exceeded (group enumeration, table size).
class SizeError : public Error {
public:
    explicit SizeError(const std::string& what_arg) : Error(what_arg) {}
};

/// An internal cross-check failed.  Seeing this exception means the library
/// itself produced inconsistent data; it is never the caller's fault.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what_arg) : Error(what_arg) {}
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

inline void check_internal(bool cond, const std::string& msg) {
    if (!cond) throw InternalError(msg);
}

}  // namespace detail

}  // namespace greenring

#endif  // GREENRING_ERROR_HPP
