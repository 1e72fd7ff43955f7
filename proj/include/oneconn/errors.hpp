#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace oneconn {

// Malformed or inconsistent user input. The CLI maps every InputError to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configuration violating one of the numerical invariants. Carries the offending index pair
// (i == j for per-component violations).
class ConfigError : public InputError {
public:
    enum class Kind { shape, asymmetric, negative_intersection, parity, negative_genus };

    ConfigError(Kind kind, std::size_t i, std::size_t j, const std::string& what)
        : InputError(what), kind_(kind), i_(i), j_(j) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t i() const noexcept { return i_; }
    std::size_t j() const noexcept { return j_; }

private:
    Kind kind_;
    std::size_t i_;
    std::size_t j_;
};

// An operation was called outside its domain (e.g. a non-reduced divisor handed to the
// reduced-curve shadow, or a check whose hypothesis does not hold).
class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

// Enumeration would exceed the configured candidate budget. Never a silent truncation.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::uint64_t required, std::uint64_t allowed)
        : std::runtime_error("enumeration budget exceeded: requires " + std::to_string(required) +
                             " candidates, max_candidates is " + std::to_string(allowed)),
          required_(required), allowed_(allowed) {}

    // Saturates at UINT64_MAX when the true requirement does not fit.
    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t allowed() const noexcept { return allowed_; }

private:
    std::uint64_t required_;
    std::uint64_t allowed_;
};

class ArithmeticOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

} // namespace oneconn
