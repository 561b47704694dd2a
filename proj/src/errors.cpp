#include "heun/errors.hpp"

namespace heun {

std::string_view error_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::PoleError: return "PoleError";
        case ErrorKind::OrderError: return "OrderError";
        case ErrorKind::ResonantExponents: return "ResonantExponents";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::FamilyFieldError: return "FamilyFieldError";
        case ErrorKind::AccessoryResonance: return "AccessoryResonance";
        case ErrorKind::RadiusError: return "RadiusError";
        case ErrorKind::TailError: return "TailError";
        case ErrorKind::CFBreakdown: return "CFBreakdown";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::DetCheckFailed: return "DetCheckFailed";
        case ErrorKind::SlowConvergence: return "SlowConvergence";
        case ErrorKind::MonodromyInconsistent: return "MonodromyInconsistent";
        case ErrorKind::JetDivByZero: return "JetDivByZero";
        case ErrorKind::ParameterResonance: return "ParameterResonance";
        case ErrorKind::SizeError: return "SizeError";
        case ErrorKind::ReflectionMismatch: return "ReflectionMismatch";
        case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    }
    return "UnknownError";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace heun
