#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qlink
{

// Base class for every error raised by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A dimension vector mentions a vertex that is not in the quiver, or has a
// negative entry.
class invalid_dimension_vector : public error
{
public:
    using error::error;
};

// Division by zero, inversion of zero, non-integral expansion.
class arithmetic_error : public error
{
public:
    using error::error;
};

// Arguments outside the mathematical domain of an operation (m > n for a
// binomial, a dimension vector on the wrong quiver, ...).
class domain_error : public error
{
public:
    using error::error;
};

// A structural precondition failed: invalid two-cycle pointer, out of range
// stratum index, non-symmetric quiver where symmetry is required.
class precondition_error : public error
{
public:
    using error::error;
};

// The source truncation region of a substitution cannot determine some target
// coefficient.
class coverage_error : public error
{
public:
    using error::error;
};

// Two series over different quivers or truncation policies were compared.
class incomparable_error : public error
{
public:
    using error::error;
};

// Malformed quiver text or coefficient rendering. Line and column are 1-based;
// zero means "not applicable".
class parse_error : public error
{
public:
    parse_error(std::size_t line, std::size_t column, const std::string &message)
        : error(format(line, column, message)), m_line(line), m_column(column)
    {
    }

    std::size_t line() const noexcept
    {
        return m_line;
    }
    std::size_t column() const noexcept
    {
        return m_column;
    }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string &message)
    {
        if (line == 0) {
            return message;
        }
        std::string out = "line " + std::to_string(line);
        if (column != 0) {
            out += ", column " + std::to_string(column);
        }
        return out + ": " + message;
    }

    std::size_t m_line;
    std::size_t m_column;
};

// Duplicate or unknown identifiers in a quiver document.
class semantic_error : public parse_error
{
public:
    using parse_error::parse_error;
};

} // namespace qlink
