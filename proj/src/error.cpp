#include "polydual/error.hpp"

namespace polydual {

const char* toString(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::EmptyIntersection: return "EmptyIntersection";
        case ErrorKind::OriginNotInterior: return "OriginNotInterior";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::NotAVertex: return "NotAVertex";
        case ErrorKind::PointNotInRelativeInterior: return "PointNotInRelativeInterior";
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::SymmetryRequired: return "SymmetryRequired";
        case ErrorKind::UnknownGenerator: return "UnknownGenerator";
        case ErrorKind::BadParameter: return "BadParameter";
        case ErrorKind::NotInJohnSandwich: return "NotInJohnSandwich";
    }
    return "Unknown";
}

}  // namespace polydual
