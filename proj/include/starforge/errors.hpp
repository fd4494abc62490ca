#ifndef STARFORGE_ERRORS_HPP
#define STARFORGE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace starforge
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error
{
public:
    DimensionMismatch(std::size_t expected, std::size_t actual)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " + std::to_string(actual)),
          expected(expected), actual(actual)
    {
    }

    std::size_t expected;
    std::size_t actual;
};

class InvalidArgument : public Error
{
public:
    using Error::Error;
};

/// Syntax error in polynomial text, graph encodings or JSON payloads.
class ParseError : public Error
{
public:
    ParseError(std::size_t position, const std::string &message)
        : Error("parse error at position " + std::to_string(position) + ": " + message), position(position)
    {
    }

    std::size_t position;
};

} // namespace starforge

#endif
