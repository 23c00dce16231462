#ifndef GCLAB_ERRORS_HPP
#define GCLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gclab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text; message carries the 1-based line number.
class ParseError : public Error {
public:
    using Error::Error;
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what) {}
};

/// A value is outside its mathematical domain (negative weight, p >= 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Dimension mismatch between operands.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Problem size exceeds the dense desk-scale budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Requested combination of options is not defined (e.g. DropEdge
/// re-normalization for a variant other than the augmented adjacency).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// An iterative solver failed to converge; message carries the residual.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Two independently computed quantities disagree (e.g. top-eigenvalue
/// multiplicity vs. connected-component count).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Feature magnitudes overflowed during propagation; message names the layer.
class DivergenceError : public Error {
public:
    using Error::Error;
};

} // namespace gclab

#endif
