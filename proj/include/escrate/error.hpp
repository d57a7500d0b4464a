#pragma once

#include <stdexcept>
#include <string>

namespace escrate {

// Caller supplied something outside an operation's domain.
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class singular_matrix : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class not_reduced : public invalid_input {
public:
    using invalid_input::invalid_input;
};

class reducible_matrix : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class dimension_cap_exceeded : public std::length_error {
public:
    dimension_cap_exceeded(std::size_t required, std::size_t cap)
        : std::length_error("matrix dimension " + std::to_string(required) +
                            " exceeds cap " + std::to_string(cap) +
                            " (raise the cap to at least " + std::to_string(required) + ")"),
          required_(required) {}
    std::size_t required() const noexcept { return required_; }

private:
    std::size_t required_;
};

class budget_exceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

// Two computations that must agree did not.
class tolerance_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace escrate
