#pragma once

#include <stdexcept>
#include <string>

namespace fourtwo {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Evaluation at (or too close to) a pole of a special function.
class PoleError : public DomainError {
public:
    explicit PoleError(const std::string& what) : DomainError(what) {}
};

// A series / iteration failed to reach the requested tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : Error(what), achieved_error(achieved) {}
    double achieved_error;
};

// Adaptive quadrature stopped before meeting its tolerance. Carries the
// best estimate so a caller may decide the result is still usable.
class ToleranceError : public Error {
public:
    ToleranceError(const std::string& what, double best, double achieved)
        : Error(what), best_estimate(best), achieved_error(achieved) {}
    double best_estimate;
    double achieved_error;
};

// The transform is only defined up to a finite explosion time.
class ExplosionError : public Error {
public:
    ExplosionError(const std::string& what, double t_star_)
        : Error(what), t_star(t_star_) {}
    double t_star;
};

// A log-space assembly still exceeded the representable range.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& what) : Error(what) {}
};

}  // namespace fourtwo
