#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mnc {

// Malformed expression text. `column` is 1-based; for "unexpected end of
// input" it points one past the last character.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t column)
        : std::runtime_error(std::move(message)), column_(column) {}

    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

// A numeric evaluation produced a non-finite value or was asked for an
// undefined operation (log of a negative number, 0 raised to a negative
// power, ...).
class EvaluationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iteration blew up: the ensemble diameter grew past the divergence
// guard.  `iteration` is the 1-based step at which growth was detected.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::string message, int iteration)
        : std::runtime_error(std::move(message)), iteration_(iteration) {}

    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

}
