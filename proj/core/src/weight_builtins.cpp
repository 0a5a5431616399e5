#include "bgqt/weight/builtins.hpp"

#include "bgqt/errors.hpp"
#include "bgqt/weight/parse.hpp"

namespace bgqt::weight {

const std::vector<BuiltinInfo>& builtin_weights() {
    using Kind = BeableConfiguration::Kind;
    static const std::vector<BuiltinInfo> presets{
        {"bohm_limsup",
         "exp(-supt(sep2(1,2))/(a*a))",
         {"a"},
         Kind::bohm,
         "penalizes the largest recorded squared separation of the two trajectories"},
        {"bohm_timeavg",
         "avgt(exp(-sep2(1,2)/(a*a)), 0, T)",
         {"a", "T"},
         Kind::bohm,
         "time-averaged closeness of the two trajectories over [0, T]"},
        {"bohm_baroque",
         "alpha*exp(-avgt(sep2(1,2), 0, 1)/(a*a))"
         " + beta*exp(-maxt(sep2(1,2), 2, 6)/(b*b))"
         " + gamma*step(supt(pos(1)*pos(1)) - c*c)"
         " + delta*cos2(supt(pos(1)*pos(1) - lag(pos(2)*pos(2), T)))",
         {"alpha", "a", "beta", "b", "gamma", "c", "delta", "T"},
         Kind::bohm,
         "four-term composite: integrated closeness on [0,1], worst separation on [2,6], "
         "excursion threshold, and a lagged squared-position comparison"},
        {"grw_pairmin",
         "flashminpair(1, 2, T, X)",
         {"T", "X"},
         Kind::grw,
         "favours flash histories whose cross-particle flash pairs all lie close in "
         "space and time on scales X, T"},
    };
    return presets;
}

ExprPtr builtin_weight(const std::string& name, const std::map<std::string, double>& params) {
    for (const auto& preset : builtin_weights()) {
        if (preset.name != name) continue;
        ExprPtr expr = parse(preset.source);
        if (!params.empty()) expr = substitute(expr, params);
        return expr;
    }
    throw ConfigError("unknown builtin weight '" + name + "'");
}

} // namespace bgqt::weight
