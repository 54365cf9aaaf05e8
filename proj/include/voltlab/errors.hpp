#pragma once

#include <stdexcept>
#include <string>

namespace voltlab {

// Error taxonomy mirrored by the CLI exit codes: config/usage problems (2),
// numerical failures such as non-converging quadrature (3), file I/O (4).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace voltlab
