#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

/// Rejected input: bad parameter values, malformed windows, mismatched grids.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Grid too small or too coarse for the requested simulation; message carries
/// a sizing suggestion.
class grid_error : public validation_error {
public:
    explicit grid_error(const std::string& what) : validation_error(what) {}
};

/// The exponential fit did not converge (distinct from domain errors).
class fit_error : public std::runtime_error {
public:
    explicit fit_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zeno
