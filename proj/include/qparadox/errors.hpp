#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qparadox {

// Common base for all domain errors raised by the library. Precondition
// violations on plain values (negative counts, bad ranges) use
// std::invalid_argument instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A 2x2 table with an empty row or column margin.
struct DegenerateTable : Error {
    using Error::Error;
};

// A label that is not present where it must be, or mismatched label sets.
struct LabelMismatch : Error {
    using Error::Error;
};

// Operation requires a specific number of outcomes.
struct DimensionError : Error {
    using Error::Error;
};

// A stage-1 marginal of zero leaves that row's conditionals undefined.
struct ZeroMarginal : Error {
    using Error::Error;
};

// Every fraction in a grid is zero, so normalization is undefined.
struct AllZero : Error {
    using Error::Error;
};

// Effect operator fails the 0 <= E <= I requirement.
struct InvalidEffect : Error {
    using Error::Error;
};

// Calibration produced an effect operator outside 0 <= E <= I. Carries the
// offending eigenvalue bounds.
struct InfeasibleCalibration : Error {
    InfeasibleCalibration(const std::string& what, double eigen_min_, double eigen_max_)
        : Error(what), eigen_min(eigen_min_), eigen_max(eigen_max_) {}

    double eigen_min;
    double eigen_max;
};

// Root bracketing failed for a price search.
struct NoRoot : Error {
    using Error::Error;
};

// Malformed input file. `line` is 1-based; 0 means the location is unknown
// (e.g. a structural problem in a JSON document).
struct ParseError : Error {
    explicit ParseError(const std::string& what, std::size_t line_number = 0)
        : Error(line_number > 0 ? what + " (line " + std::to_string(line_number) + ")" : what),
          line(line_number) {}

    std::size_t line;
};

// Wrong number of arms or strata in an input table.
struct ArityError : Error {
    using Error::Error;
};

}  // namespace qparadox
