#pragma once

#include <stdexcept>
#include <string>

namespace mvrank {

// Bad input data (malformed files, dimension mismatches, non-finite values).
struct data_error : std::runtime_error {
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (non-convergence, invalid numeric regime).
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mvrank
