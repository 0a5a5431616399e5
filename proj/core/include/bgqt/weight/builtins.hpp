#pragma once

#include <map>
#include <string>
#include <vector>

#include "bgqt/beable.hpp"
#include "bgqt/weight/ast.hpp"

namespace bgqt::weight {

struct BuiltinInfo {
    std::string name;
    std::string source;                  // documented source text
    std::vector<std::string> parameters; // free parameters of the source
    BeableConfiguration::Kind kind;
    std::string description;
};

const std::vector<BuiltinInfo>& builtin_weights();

// Preset AST: parse of the documented source with any parameters found
// in `params` inlined as number literals. Throws ConfigError for an
// unknown name.
ExprPtr builtin_weight(const std::string& name,
                       const std::map<std::string, double>& params = {});

} // namespace bgqt::weight
