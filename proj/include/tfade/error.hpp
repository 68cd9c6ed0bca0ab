#pragma once

#include <stdexcept>
#include <string>

namespace tfade {

enum class ErrorCode {
    invalid_argument,
    domain,
    out_of_range,
    certification,
    numerical,
};

/// Exception thrown by every core routine. The code is what the C API
/// reports back to callers.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, const std::string& what,
                    ErrorCode code = ErrorCode::invalid_argument) {
    if (!cond) fail(code, what);
}

}  // namespace tfade
