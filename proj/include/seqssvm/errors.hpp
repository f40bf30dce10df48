#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqssvm {

// Base class for everything thrown by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file. line is 1-based.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t line)
        : error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Violated precondition or invalid value (length mismatch, unknown label, ...).
class domain_error : public error {
public:
    using error::error;
};

// Bad configuration (unknown constraint tag, invalid schedule, ...).
class config_error : public error {
public:
    using error::error;
};

// Request exceeds a hard resource guard (e.g. exhaustive search space).
class capacity_error : public error {
public:
    using error::error;
};

// Non-finite values encountered during optimization.
class numeric_error : public error {
public:
    using error::error;
};

} // namespace seqssvm
