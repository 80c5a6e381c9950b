#pragma once

#include <stdexcept>
#include <string>

namespace cdel {

// Raised when an input is mathematically inadmissible for the requested
// operation (degenerate operator, eigenvalue pinned at a pole, ...).
struct degenerate_error : std::runtime_error {
    explicit degenerate_error(const std::string& m) : std::runtime_error(m) {}
};

// Raised for malformed configuration or I/O problems.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& m) : std::runtime_error(m) {}
};

} // namespace cdel
