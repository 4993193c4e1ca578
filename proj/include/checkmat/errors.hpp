#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace checkmat {

/// Base class for all library errors. The CLI maps subclasses onto its
/// exit-code contract (usage / io / numeric / classification).
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid matrix or block dimensions (zero, negative, or mismatched).
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Invalid scalar argument (non-finite alpha, non-positive tolerance, ...).
class ArgumentError : public Error {
  public:
    using Error::Error;
};

/// An entry lies outside the expected two-symbol alphabet.
class AlphabetError : public Error {
  public:
    using Error::Error;
};

/// Block placement does not fit inside the host matrix.
class GeometryError : public Error {
  public:
    using Error::Error;
};

/// The requested prediction is outside the supported (canonical) regime.
class UnsupportedError : public Error {
  public:
    using Error::Error;
};

/// Iterative routine failed to converge; carries the final residual.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const { return residual_; }

  private:
    double residual_;
};

/// A rank-one component could not be assigned to background or payload;
/// carries the offending component index.
class ClassificationError : public Error {
  public:
    ClassificationError(const std::string& what, std::size_t component_index)
        : Error(what), component_index_(component_index) {}

    std::size_t component_index() const { return component_index_; }

  private:
    std::size_t component_index_;
};

/// Malformed input text (CSV); carries the 1-based line number.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what), line_(line) {}

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Filesystem-level failure (unreadable or unwritable path).
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace checkmat
