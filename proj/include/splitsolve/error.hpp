#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace splitsolve {

enum class ErrorKind {
    invalid_argument,
    unsupported_flux,
    numerical_blowup,
    degenerate_density,
    out_of_domain,
    invalid_entropy,
    invalid_flux,
    hypothesis_violation,
    unresolved_scale,
    construction_bug,
    io_failure,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid-argument";
        case ErrorKind::unsupported_flux: return "unsupported-flux";
        case ErrorKind::numerical_blowup: return "numerical-blowup";
        case ErrorKind::degenerate_density: return "degenerate-density";
        case ErrorKind::out_of_domain: return "out-of-domain";
        case ErrorKind::invalid_entropy: return "invalid-entropy";
        case ErrorKind::invalid_flux: return "invalid-flux";
        case ErrorKind::hypothesis_violation: return "hypothesis-violation";
        case ErrorKind::unresolved_scale: return "unresolved-scale";
        case ErrorKind::construction_bug: return "construction-bug";
        case ErrorKind::io_failure: return "io-failure";
    }
    return "unknown";
}

/// Every failure raised by the library carries one of the kinds above; the
/// message always starts with the kind tag so callers can grep for it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
    throw Error(kind, detail);
}

inline void require(bool condition, const std::string& detail) {
    if (!condition) fail(ErrorKind::invalid_argument, detail);
}

}  // namespace splitsolve
