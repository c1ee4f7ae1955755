#pragma once
#include <stdexcept>
#include <string>

namespace vlll {

// Raised when an enumeration or grid exceeds its configured budget.
struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an iterative solver fails to converge within its iteration cap.
struct no_convergence : std::runtime_error {
    explicit no_convergence(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vlll
