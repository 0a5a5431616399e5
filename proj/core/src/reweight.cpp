#include "bgqt/reweight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bgqt/errors.hpp"

namespace bgqt::reweight {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// nearest recorded sample index for time t
std::size_t nearest_record(const Trajectory& traj, double t) {
    if (traj.times.size() < 2) return 0;
    const double spacing = traj.times[1] - traj.times[0];
    const long k = std::lround((t - traj.times.front()) / spacing);
    return static_cast<std::size_t>(std::clamp<long>(k, 0, traj.times.size() - 1));
}

} // namespace

WeightFunction make_expr_weight(const weight::ExprPtr& expr, const weight::Bindings& bindings) {
    WeightFunction w;
    w.source_text = weight::print(expr);
    w.fn = [expr, bindings](const BeableConfiguration& config) {
        return weight::evaluate(expr, bindings, config).value;
    };
    return w;
}

WeightFunction make_constant_weight(double value) {
    if (!(value > 0.0)) throw ConfigError("constant weight must be positive");
    WeightFunction w;
    w.source_text = std::to_string(value);
    w.fn = [value](const BeableConfiguration&) { return value; };
    return w;
}

ObservableSpec observable_position_at(int particle, double t) {
    ObservableSpec o;
    o.name = "position_at(p" + std::to_string(particle) + ", t=" + std::to_string(t) + ")";
    o.fn = [particle, t](const BeableConfiguration& c) -> std::optional<double> {
        const Trajectory& traj = c.trajectory();
        if (particle < 1 || particle > traj.particle_count) return std::nullopt;
        return traj.position(nearest_record(traj, t), particle - 1);
    };
    return o;
}

ObservableSpec observable_sep_at(double t) {
    ObservableSpec o;
    o.name = "sep_at(t=" + std::to_string(t) + ")";
    o.fn = [t](const BeableConfiguration& c) -> std::optional<double> {
        const Trajectory& traj = c.trajectory();
        if (traj.particle_count < 2) return std::nullopt;
        const std::size_t k = nearest_record(traj, t);
        return std::abs(traj.position(k, 0) - traj.position(k, 1));
    };
    return o;
}

ObservableSpec observable_final_position(int particle) {
    ObservableSpec o;
    o.name = "final_position(p" + std::to_string(particle) + ")";
    o.fn = [particle](const BeableConfiguration& c) -> std::optional<double> {
        const Trajectory& traj = c.trajectory();
        if (particle < 1 || particle > traj.particle_count || traj.samples() == 0)
            return std::nullopt;
        return traj.position(traj.samples() - 1, particle - 1);
    };
    return o;
}

ObservableSpec observable_flash_count(int particle) {
    ObservableSpec o;
    o.name = "flash_count(p" + std::to_string(particle) + ")";
    o.fn = [particle](const BeableConfiguration& c) -> std::optional<double> {
        const FlashHistory& hist = c.flash_history();
        if (particle < 1 || particle > hist.particle_count) return std::nullopt;
        double n = 0.0;
        for (const auto& f : hist.flashes)
            if (f.particle == particle - 1) n += 1.0;
        return n;
    };
    return o;
}

ObservableSpec observable_first_flash_time(int particle) {
    ObservableSpec o;
    o.name = "first_flash_time(p" + std::to_string(particle) + ")";
    o.fn = [particle](const BeableConfiguration& c) -> std::optional<double> {
        const FlashHistory& hist = c.flash_history();
        if (particle < 1 || particle > hist.particle_count) return std::nullopt;
        for (const auto& f : hist.flashes) // flashes are time-ordered
            if (f.particle == particle - 1) return f.t;
        return std::nullopt; // undefined without a flash
    };
    return o;
}

ObservableSpec observable_custom(std::string name, const weight::ExprPtr& expr,
                                 const weight::Bindings& bindings) {
    ObservableSpec o;
    o.name = std::move(name);
    o.fn = [expr, bindings](const BeableConfiguration& c) -> std::optional<double> {
        return weight::evaluate_signed(expr, bindings, c);
    };
    return o;
}

ObservableSpec observable_delta_at(int step) {
    ObservableSpec o;
    o.name = "delta_at(step=" + std::to_string(step) + ")";
    o.fn = [step](const BeableConfiguration& c) -> std::optional<double> {
        const CosmoSequence& seq = c.sequence();
        if (step < 0 || step >= static_cast<int>(seq.length())) return std::nullopt;
        return seq.deltas[step];
    };
    return o;
}

ObservableSpec observable_level_indicator(int step, int level) {
    ObservableSpec o;
    o.name = "level_indicator(step=" + std::to_string(step) + ", level=" +
             std::to_string(level) + ")";
    o.fn = [step, level](const BeableConfiguration& c) -> std::optional<double> {
        const CosmoSequence& seq = c.sequence();
        if (step < 0 || step >= static_cast<int>(seq.length())) return std::nullopt;
        return seq.levels[step] == level ? 1.0 : 0.0;
    };
    return o;
}

EstimationResult estimate(const std::vector<BeableConfiguration>& ensemble,
                          const WeightFunction& weight,
                          const std::vector<ObservableSpec>& observables) {
    if (ensemble.empty()) throw ConfigError("estimate requires a non-empty ensemble");

    EstimationResult result;
    result.weight_source_text = weight.source_text;
    auto& records = result.ensemble.records;
    records.resize(ensemble.size());

    for (std::size_t k = 0; k < ensemble.size(); ++k) {
        WeightedRecord& rec = records[k];
        rec.config_id = k;
        rec.seed = ensemble[k].seed;
        const double w = weight.fn(ensemble[k]);
        if (w < 0.0 || !std::isfinite(w))
            throw weight::WeightError(weight::ErrorClass::negative_value,
                                      "weight evaluated to " + std::to_string(w) +
                                          " on configuration " + std::to_string(k));
        rec.log_weight = w > 0.0 ? std::log(w) : kNegInf;
        rec.observables.reserve(observables.size());
        for (const auto& obs : observables) rec.observables.push_back(obs.fn(ensemble[k]));
    }
    // records are already ordered by config_id; the reduction below walks
    // them in that order, which is the bit-exact reproducibility contract

    double max_log = kNegInf;
    std::size_t surviving = 0;
    for (const auto& rec : records) {
        if (rec.log_weight != kNegInf) ++surviving;
        max_log = std::max(max_log, rec.log_weight);
    }
    if (surviving == 0)
        throw DegenerateMeasureError(
            "all weights vanish on the sampled ensemble: the guided measure is undefined on "
            "its support");

    result.ensemble.max_log_weight = max_log;
    result.ensemble.surviving_fraction =
        static_cast<double>(surviving) / static_cast<double>(records.size());

    double sum_w = 0.0, sum_w2 = 0.0;
    for (const auto& rec : records) {
        const double u = rec.log_weight == kNegInf ? 0.0 : std::exp(rec.log_weight - max_log);
        sum_w += u;
        sum_w2 += u * u;
    }
    result.ensemble.sum_weight = sum_w;
    result.ensemble.sum_weight_sq = sum_w2;
    result.ensemble.ess = sum_w * sum_w / sum_w2;

    for (std::size_t i = 0; i < observables.size(); ++i) {
        Estimate est;
        est.observable = observables[i].name;
        est.m = records.size();

        double s_w = 0.0, s_w2 = 0.0, s_wf = 0.0;
        std::size_t defined = 0;
        for (const auto& rec : records) {
            if (!rec.observables[i].has_value()) continue;
            ++defined;
            const double u = rec.log_weight == kNegInf ? 0.0 : std::exp(rec.log_weight - max_log);
            s_w += u;
            s_w2 += u * u;
            s_wf += u * *rec.observables[i];
        }
        est.defined = defined;
        if (defined == 0 || s_w == 0.0) {
            est.value = std::numeric_limits<double>::quiet_NaN();
            est.std_error = std::numeric_limits<double>::quiet_NaN();
            est.ess = 0.0;
            result.estimates.push_back(std::move(est));
            continue;
        }
        est.value = s_wf / s_w;
        est.ess = s_w * s_w / s_w2;
        // delta method: Var = sum_k (w_k / sum_w)^2 (f_k - Ehat)^2
        double var = 0.0;
        for (const auto& rec : records) {
            if (!rec.observables[i].has_value()) continue;
            const double u = rec.log_weight == kNegInf ? 0.0 : std::exp(rec.log_weight - max_log);
            const double wt = u / s_w;
            const double d = *rec.observables[i] - est.value;
            var += wt * wt * d * d;
        }
        est.std_error = std::sqrt(var);
        result.estimates.push_back(std::move(est));
    }
    return result;
}

ComparisonReport compare(const EstimationResult& baseline, const EstimationResult& guided) {
    if (baseline.estimates.size() != guided.estimates.size())
        throw ConfigError("compare: observable lists differ in length");
    ComparisonReport report;
    for (std::size_t i = 0; i < baseline.estimates.size(); ++i) {
        const Estimate& b = baseline.estimates[i];
        const Estimate& g = guided.estimates[i];
        if (b.observable != g.observable)
            throw ConfigError("compare: observable mismatch '" + b.observable + "' vs '" +
                              g.observable + "'");
        ComparisonRow row;
        row.observable = b.observable;
        row.baseline = b.value;
        row.guided = g.value;
        row.shift = g.value - b.value;
        row.sigma = std::sqrt(b.std_error * b.std_error + g.std_error * g.std_error);
        row.significance = row.sigma > 0.0 ? row.shift / row.sigma : 0.0;
        report.rows.push_back(std::move(row));
    }
    report.ess_ratio =
        baseline.ensemble.ess > 0.0 ? guided.ensemble.ess / baseline.ensemble.ess : 0.0;
    return report;
}

} // namespace bgqt::reweight
