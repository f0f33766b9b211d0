#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netrel {

// A caller broke a documented precondition (length mismatch, sample outside
// [0,1], count larger than 2^M, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Exhaustive methods refuse inputs above their configured size limit.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateMean : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// External model counter failed: nonzero exit, timeout, or no `s mc` line.
class CounterError : public std::runtime_error {
public:
    CounterError(const std::string& what, std::string captured)
        : std::runtime_error(what), captured_(std::move(captured)) {}

    const std::string& captured_output() const noexcept { return captured_; }

private:
    std::string captured_;
};

} // namespace netrel
