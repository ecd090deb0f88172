#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slpenum {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Materialization budget (vertices / paths / subsets). Default 10^6, overridable by
// the SLPENUM_BUDGET environment variable.
std::size_t default_budget();

}  // namespace slpenum
