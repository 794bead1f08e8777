#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace waysim {

/// Raised when an operation's numerical precondition is not met
/// (bad grid, state leaking past the grid boundary, incompatible
/// spacings, ...). Carries a short stable code so callers and the
/// CLI can dispatch without parsing the message.
class precondition_error : public std::runtime_error {
public:
    precondition_error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw precondition_error(code, message);
}

inline void require(bool ok, const std::string& code, const std::string& message) {
    if (!ok) fail(code, message);
}

} // namespace waysim
