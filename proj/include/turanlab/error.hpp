#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace turanlab {

enum class ErrorCode {
    invalid_argument,
    invalid_homomorphism,
    domain_not_symmetric,
    witness_rejected,
    hypothesis_failed,
    certificate_invalid,
    modulus_too_small,
    numerical_inconsistency,
    parse_error,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_homomorphism: return "invalid-homomorphism";
    case ErrorCode::domain_not_symmetric: return "domain-not-symmetric";
    case ErrorCode::witness_rejected: return "witness-rejected";
    case ErrorCode::hypothesis_failed: return "hypothesis-failed";
    case ErrorCode::certificate_invalid: return "certificate-invalid";
    case ErrorCode::modulus_too_small: return "M-too-small";
    case ErrorCode::numerical_inconsistency: return "numerical-inconsistency";
    case ErrorCode::parse_error: return "parse-error";
    }
    return "unknown";
}

/// Every recoverable failure in the library is reported through this type.
/// The code tells callers (and the CLI exit-code mapping) what went wrong;
/// the message carries the offending element, pair or interval.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace turanlab
