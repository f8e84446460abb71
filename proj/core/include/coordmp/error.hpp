#pragma once

#include <stdexcept>
#include <string>

namespace coordmp {

// Malformed or contradictory user input. Maps to CLI exit code 3.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parse failure with the 1-based line it was detected on.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A configured resource limit was hit before an answer was found. Exit code 4.
class LimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace coordmp
