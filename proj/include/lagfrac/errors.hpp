#ifndef LAGFRAC_ERRORS_HPP
#define LAGFRAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lagfrac {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A numerical process failed to reach its target (quadrature, eigensolve,
// series summation). The message carries the diagnostics.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A truncated sum could not meet the requested tolerance; carries the
// tail bound that was actually achieved.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& msg, double achieved_bound)
        : std::runtime_error(msg), achieved(achieved_bound) {}
    double achieved;
};

// Invalid experiment configuration; the message names the violated
// constraint verbatim.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

} // namespace lagfrac

#endif
