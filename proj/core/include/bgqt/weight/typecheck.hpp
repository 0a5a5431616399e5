#pragma once

#include "bgqt/beable.hpp"
#include "bgqt/weight/ast.hpp"

namespace bgqt::weight {

// Annotates every node scalar/series and validates the expression
// against a beable kind: trajectory primitives (pos, sep2) are only
// available for bohm (pos(1) also for cosmo, addressing the delta
// sequence), flashminpair only for grw. Scalar functions and arithmetic
// lift pointwise over series; the root must be scalar. Particle indices
// must be positive integer literals. Throws WeightError with class
// kind_mismatch / series_at_root / argument.
ExprPtr typecheck(const ExprPtr& expr, BeableConfiguration::Kind kind);

} // namespace bgqt::weight
