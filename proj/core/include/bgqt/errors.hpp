#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bgqt {

// Invalid model parameters, descriptors or experiment configs.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Simulation-level failures: degenerate reweighted measure, numerically
// degenerate collapse, and similar conditions that abort a run.
class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& msg) : std::runtime_error(msg) {}
};

// All weights vanished on the sampled support: the guided measure is
// undefined on this ensemble.
class DegenerateMeasureError : public SimulationError {
public:
    explicit DegenerateMeasureError(const std::string& msg) : SimulationError(msg) {}
};

namespace weight {

enum class ErrorClass {
    syntax,            // malformed source text
    unknown_function,  // IDENT "(" with a non-reserved name
    arity,             // wrong argument count for a reserved function
    kind_mismatch,     // primitive not available for the beable kind
    series_at_root,    // expression does not reduce to a scalar
    argument,          // bad literal argument (particle index, window)
    unbound_parameter, // free identifier with no binding at evaluation
    negative_value,    // weight evaluated below zero
    division_by_zero,
    empty_window,      // lag/reducer window contains no samples
    domain,            // sqrt of a negative, non-finite intermediate
};

const char* to_string(ErrorClass c);

// Error for parse/typecheck/evaluate, tagged with a class and the source
// offset of the offending node (npos when synthetic).
class WeightError : public std::runtime_error {
public:
    WeightError(ErrorClass klass, const std::string& msg,
                std::size_t offset = std::string::npos,
                int line = -1, int column = -1)
        : std::runtime_error(msg), klass_(klass), offset_(offset),
          line_(line), column_(column) {}

    ErrorClass klass() const { return klass_; }
    std::size_t offset() const { return offset_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    ErrorClass klass_;
    std::size_t offset_;
    int line_;
    int column_;
};

} // namespace weight
} // namespace bgqt
