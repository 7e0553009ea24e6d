#pragma once

#include <stdexcept>
#include <string>

namespace immunize {

// Error hierarchy shared by all modules. The CLI maps these to process exit
// codes: 0 ok, 2 config/domain error, 3 capability error, 4 I/O error.
// Anything else (convergence, overflow, internal bugs) exits 1.
class Error : public std::runtime_error {
public:
    Error(const std::string& msg, int exit_code)
        : std::runtime_error(msg), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg, 2) {}
};

// Invalid arguments to an operation (out-of-range node id, mismatched
// inputs, bad parameter domain).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg, 2) {}
};

// The request is valid but exceeds a configured size/work bound.
class CapabilityError : public Error {
public:
    explicit CapabilityError(const std::string& msg) : Error(msg, 3) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg, 4) {}
};

class ParseError : public IoError {
public:
    ParseError(const std::string& msg, long line)
        : IoError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& msg) : Error(msg, 1) {}
};

} // namespace immunize
