#pragma once

#include <map>
#include <string>

#include "bgqt/beable.hpp"
#include "bgqt/weight/ast.hpp"

namespace bgqt::weight {

using Bindings = std::map<std::string, double>;

// Evaluated weight: a finite non-negative real plus per-reducer
// intermediate values keyed "<fn>@<source offset>" (window truncations
// are flagged with a ".truncated" entry).
struct WeightValue {
    double value = 0.0;
    std::map<std::string, double> diagnostics;
};

// Evaluates w(B). Series are sampled on the configuration's record grid;
// supt/inft take the max/min over recorded samples (the finite-horizon
// surrogate for an infinite-time lim sup/inf), avgt is trapezoidal, lag
// shifts by the nearest multiple of the record stride and truncates to
// the overlap window. Throws WeightError (unbound_parameter,
// negative_value, division_by_zero, empty_window, domain, argument).
WeightValue evaluate(const ExprPtr& expr, const Bindings& bindings,
                     const BeableConfiguration& config);

// Evaluates a real-valued functional with the same machinery but without
// the non-negativity requirement (used for custom observables).
double evaluate_signed(const ExprPtr& expr, const Bindings& bindings,
                       const BeableConfiguration& config);

} // namespace bgqt::weight
