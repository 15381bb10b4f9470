#pragma once

#include <stdexcept>
#include <string>

namespace repalg {

// Bad caller input: mismatched presentations, arity errors, malformed data.
// Mapped to exit code 2 by the CLI.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mathematically impossible request on valid input: non-invertible element,
// degenerate pairing. Also exit code 2.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace repalg
