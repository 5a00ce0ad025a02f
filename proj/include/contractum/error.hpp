#pragma once

#include <stdexcept>
#include <string>

namespace contractum {

/// Base of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that violates a structural precondition: asymmetric or negative
/// distance tables, bad file syntax, unparsable expressions, bad options.
class malformed_input : public error {
public:
    using error::error;
};

/// Expression parse failure; carries the offending token and its offset.
class parse_error : public malformed_input {
public:
    parse_error(const std::string& message, std::string token, std::size_t position)
        : malformed_input(message + " at position " + std::to_string(position) + ": '" + token + "'"),
          token_(std::move(token)),
          position_(position) {}

    const std::string& token() const noexcept { return token_; }
    std::size_t position() const noexcept { return position_; }

private:
    std::string token_;
    std::size_t position_;
};

/// An auxiliary function was evaluated outside its domain (e.g. F at t <= 0).
class domain_error : public error {
public:
    using error::error;
};

/// A self-map produced a value that is not a point of the space.
class closure_error : public error {
public:
    using error::error;
};

/// NaN, infinity or a negative distance surfaced during evaluation.
class numeric_error : public error {
public:
    using error::error;
};

/// Not enough recorded data to run a diagnostic.
class insufficient_data : public error {
public:
    using error::error;
};

} // namespace contractum
