#pragma once

#include <stdexcept>
#include <string>

namespace polydual {

enum class ErrorKind {
    DegenerateInput,
    EmptyIntersection,
    OriginNotInterior,
    SingularMatrix,
    NotAVertex,
    PointNotInRelativeInterior,
    ConvergenceFailure,
    SymmetryRequired,
    UnknownGenerator,
    BadParameter,
    NotInJohnSandwich,
};

const char* toString(ErrorKind kind) noexcept;

/// Every failure raised by the geometry, duality, invariant and oracle layers.
/// `kind()` names the violated precondition; the CLI prints it on stderr.
class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(toString(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace polydual
