#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heun {

enum class ErrorKind {
    PoleError,
    OrderError,
    ResonantExponents,
    DomainError,
    FamilyFieldError,
    AccessoryResonance,
    RadiusError,
    TailError,
    CFBreakdown,
    NonConvergence,
    DetCheckFailed,
    SlowConvergence,
    MonodromyInconsistent,
    JetDivByZero,
    ParameterResonance,
    SizeError,
    ReflectionMismatch,
    BranchAmbiguity,
};

std::string_view error_name(ErrorKind kind);

/// Every failure raised by the library carries one of the named kinds above;
/// the CLI prints the name on the diagnostic stream.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return error_name(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace heun
