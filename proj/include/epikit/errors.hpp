#pragma once

#include <stdexcept>
#include <string>

namespace epikit {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// argument outside the mathematical domain of an operation
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// invalid integrator or solver configuration
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// asked for a peak/fastest-increase quantity when r0*S0 <= 1
struct NoEpidemicError : Error {
    explicit NoEpidemicError(const std::string& msg) : Error(msg) {}
};

struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

struct EventNotFound : Error {
    explicit EventNotFound(const std::string& msg) : Error(msg) {}
};

struct QuadratureError : Error {
    explicit QuadratureError(const std::string& msg) : Error(msg) {}
};

} // namespace epikit
