#pragma once

#include <stdexcept>
#include <string>

namespace wrs {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A quantity that diverges at the requested argument (e.g. F(k) at k = 1).
struct DivergenceError : Error {
    explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

// Operand of the periodic antiderivative has nonzero mean: it is not the
// derivative of any periodic function, so inverting d/dx is meaningless.
struct NonExactDerivative : Error {
    explicit NonExactDerivative(const std::string& msg) : Error(msg) {}
};

// The stationary quartic has no interval of positive values between simple
// roots, hence no real oscillation to integrate.
struct NoOscillation : Error {
    explicit NoOscillation(const std::string& msg) : Error(msg) {}
};

// A turning point of the stationary quartic is (nearly) a double root; the
// orbit degenerates and the period diverges.
struct TurningPointDegenerate : Error {
    explicit TurningPointDegenerate(const std::string& msg) : Error(msg) {}
};

// Spinor integration exceeded the growth guard (hyperbolic regime).
struct BlowUpError : Error {
    explicit BlowUpError(const std::string& msg) : Error(msg) {}
};

// Time evolution left the stability envelope.
struct InstabilityError : Error {
    explicit InstabilityError(const std::string& msg) : Error(msg) {}
};

// Grid too coarse for the requested stencil.
struct GridTooSmall : Error {
    explicit GridTooSmall(const std::string& msg) : Error(msg) {}
};

// The second spinor component vanishes somewhere on the grid, so the
// (f, phi) chart is not defined there.
struct ChartError : Error {
    explicit ChartError(const std::string& msg) : Error(msg) {}
};

// Conformal factor below threshold: the immersion degenerates.
struct DegenerateImmersion : Error {
    explicit DegenerateImmersion(const std::string& msg) : Error(msg) {}
};

// An operation requiring a closed (periodic) spinor trajectory received a
// non-closing one.
struct NonPeriodicTrajectory : Error {
    explicit NonPeriodicTrajectory(const std::string& msg) : Error(msg) {}
};

// Operation valid on one branch family only (e.g. sign-definite profiles).
struct BranchError : Error {
    explicit BranchError(const std::string& msg) : Error(msg) {}
};

// File input/output failure.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace wrs
