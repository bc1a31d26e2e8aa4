#pragma once

#include <stdexcept>
#include <string>

namespace gtskit {

enum class ErrorKind {
    CarrierMismatch,
    UnrepresentablePoint,
    Overflow,
    Syntax,
    NonOpenMember,
    NonAdmissibleProbe,
    UnsupportedSubset,
    UnsupportedCarrier,
    UnsupportedPresentation,
    Unrepresentable,
    NonSmallFactor,
    NonSmallPiece,
    OverlapNotOpen,
    IncompatibleTraces,
    BallNotOpen,
    PolicyMismatch,
    PointNotCovered,
    NoInfimum,
    PreconditionUnmet,
    NonPosetCategory,
    NonFiniteCarrier,
    InvalidPresentation,
    InvalidCategory,
    InvalidMap,
    BudgetExceeded,
};

std::string to_string(ErrorKind kind);

/// The single exception type thrown by the library; `kind()` identifies the
/// failed contract.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(to_string(kind) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace gtskit
