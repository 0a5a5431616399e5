#pragma once

#include <string>

#include "bgqt/weight/ast.hpp"

namespace bgqt::weight {

// Recursive-descent parser for the weight grammar:
//   expr  := term { ("+"|"-") term }
//   term  := unary { ("*"|"/") unary }
//   unary := ["-"] atom
//   atom  := NUMBER | IDENT | IDENT "(" [expr {"," expr}] ")" | "(" expr ")"
// Whitespace-insensitive. Reserved names become calls (checked for
// arity); any other identifier is a parameter. Throws WeightError with
// class syntax / unknown_function / arity.
ExprPtr parse(const std::string& source);

} // namespace bgqt::weight
