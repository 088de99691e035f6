#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ptkit {

// Toolkit-wide error with a stable machine-readable code. Codes are part of
// the CLI contract; messages are free-form context.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

} // namespace ptkit
