#ifndef QDEFORM_ERRORS_HPP
#define QDEFORM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdeform {

/// Base class for all qdeform errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precondition violation on an argument (dimension bounds, index ranges, basis mismatch).
struct InvalidArgument : Error {
    using Error::Error;
};

/// A construction that cannot be represented (negative structure value under a
/// square root, self-check disagreement between two construction routes).
struct RepresentationError : Error {
    using Error::Error;
};

/// Missing or inconsistent generator/parameter bindings.
struct BindingError : Error {
    using Error::Error;
};

/// Non-finite values produced while evaluating a relation.
struct EvaluationError : Error {
    using Error::Error;
};

/// Positioned diagnostic from the .qdl parser. Lines and columns are 1-based.
struct ParseError : Error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ", col " + std::to_string(column_) + ": " + what_),
          line(line_), column(column_) {}
};

/// CLI / configuration errors (exit status 2 territory).
struct ConfigError : Error {
    using Error::Error;
};

} // namespace qdeform

#endif
