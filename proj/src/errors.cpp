#include "gtskit/errors.hpp"

namespace gtskit {

std::string to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::CarrierMismatch: return "CarrierMismatch";
        case ErrorKind::UnrepresentablePoint: return "UnrepresentablePoint";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::Syntax: return "Syntax";
        case ErrorKind::NonOpenMember: return "NonOpenMember";
        case ErrorKind::NonAdmissibleProbe: return "NonAdmissibleProbe";
        case ErrorKind::UnsupportedSubset: return "UnsupportedSubset";
        case ErrorKind::UnsupportedCarrier: return "UnsupportedCarrier";
        case ErrorKind::UnsupportedPresentation: return "UnsupportedPresentation";
        case ErrorKind::Unrepresentable: return "Unrepresentable";
        case ErrorKind::NonSmallFactor: return "NonSmallFactor";
        case ErrorKind::NonSmallPiece: return "NonSmallPiece";
        case ErrorKind::OverlapNotOpen: return "OverlapNotOpen";
        case ErrorKind::IncompatibleTraces: return "IncompatibleTraces";
        case ErrorKind::BallNotOpen: return "BallNotOpen";
        case ErrorKind::PolicyMismatch: return "PolicyMismatch";
        case ErrorKind::PointNotCovered: return "PointNotCovered";
        case ErrorKind::NoInfimum: return "NoInfimum";
        case ErrorKind::PreconditionUnmet: return "PreconditionUnmet";
        case ErrorKind::NonPosetCategory: return "NonPosetCategory";
        case ErrorKind::NonFiniteCarrier: return "NonFiniteCarrier";
        case ErrorKind::InvalidPresentation: return "InvalidPresentation";
        case ErrorKind::InvalidCategory: return "InvalidCategory";
        case ErrorKind::InvalidMap: return "InvalidMap";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    }
    return "Error";
}

}  // namespace gtskit
