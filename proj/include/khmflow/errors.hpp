#pragma once

#include <stdexcept>
#include <string>

namespace khm {

// Numerical failures raised by the solver and statistics engine.
struct CflViolation : std::runtime_error {
    explicit CflViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonFinite : std::runtime_error {
    explicit NonFinite(const std::string& msg) : std::runtime_error(msg) {}
};

struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& msg) : std::runtime_error(msg) {}
};

struct BadDensity : std::runtime_error {
    explicit BadDensity(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateData : std::runtime_error {
    explicit DegenerateData(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnresolvedSupport : std::runtime_error {
    explicit UnresolvedSupport(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace khm
