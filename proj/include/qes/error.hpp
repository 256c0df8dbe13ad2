#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qes {

enum class ErrorCode {
    InvalidParameter,
    SectorMismatch,
    UnsupportedFamily,
    InexactDivision,
    DegenerateLeadingCoefficient,
    NoConvergence,
    SingularJacobian,
    PoleOfGamma,
    PoleOfPotential,
    DivergentProduct,
    SubspaceLeak,
    DegenerateRoots,
    LimitViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; callers
/// that need to branch on the failure kind inspect code() rather than parsing what().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace qes
