#pragma once

#include <stdexcept>
#include <string>

namespace circres {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A literal with a variable index below 1.
class MalformedLiteral : public Error {
public:
    using Error::Error;
};

/// An assignment does not cover a variable that is being evaluated.
class IncompleteAssignment : public Error {
public:
    using Error::Error;
};

/// A brute-force routine was asked to enumerate more than it allows.
class TooLarge : public Error {
public:
    using Error::Error;
};

/// Dangling ids, duplicate ids, or otherwise broken graph structure.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// An input fails local rule checking or a precondition of an operation.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A flow assignment is missing an entry for an inference vertex.
class IncompleteFlow : public Error {
public:
    using Error::Error;
};

/// Bad command-line usage or parameters.
class UsageError : public Error {
public:
    using Error::Error;
};

/// A configurable resource limit would be exceeded.
class ResourceGuard : public Error {
public:
    using Error::Error;
};

/// Text input that does not follow its format; carries the 1-based position.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column = 0)
        : Error(format(message, line, column)), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    static std::string format(const std::string& message, int line, int column) {
        std::string out = "line " + std::to_string(line);
        if (column > 0) out += ", column " + std::to_string(column);
        return out + ": " + message;
    }

    int line_;
    int column_;
};

}  // namespace circres
