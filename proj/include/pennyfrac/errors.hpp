#pragma once

#include <stdexcept>
#include <string>

namespace pennyfrac {

// Invalid physical/geometric input (preconditions, formula domains).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Configuration file problems: parse, units, invariants.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature non-convergence, singular systems, diverged iterations.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// I/O failures, always carrying the offending path.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pennyfrac
