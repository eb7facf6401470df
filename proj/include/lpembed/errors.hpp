#pragma once

#include <stdexcept>
#include <string>

namespace lpembed {

/// Bad arguments or inputs that violate a documented precondition.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested problem size exceeds a configured cap.
class CapacityError : public ValidationError {
public:
    explicit CapacityError(const std::string& what) : ValidationError(what) {}
};

/// Base for failures of the numerical machinery itself.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A barrier argument touched or crossed the spectrum it must enclose.
class BarrierViolation : public NumericalError {
public:
    explicit BarrierViolation(const std::string& what) : NumericalError(what) {}
};

/// No admissible candidate at some step of the selection loop.
class InfeasibleStep : public NumericalError {
public:
    explicit InfeasibleStep(const std::string& what) : NumericalError(what) {}
};

/// A matrix that must be nonsingular (or nonzero) is not.
class RankDeficiency : public NumericalError {
public:
    explicit RankDeficiency(const std::string& what) : NumericalError(what) {}
};

/// File-system or parse failures.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lpembed
