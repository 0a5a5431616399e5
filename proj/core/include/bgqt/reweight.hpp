#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bgqt/beable.hpp"
#include "bgqt/weight/eval.hpp"

namespace bgqt::reweight {

// Non-negative weight functional w(B). Expression weights are one
// provider; the cosmology module supplies interval-indicator and
// per-step-table weights through the same interface.
struct WeightFunction {
    std::string source_text; // reported with results
    std::function<double(const BeableConfiguration&)> fn;
};

WeightFunction make_expr_weight(const weight::ExprPtr& expr, const weight::Bindings& bindings);
WeightFunction make_constant_weight(double value);

// Observable f(B); nullopt marks a configuration on which the observable
// is undefined (such a record is excluded, weight and all, from both
// sums of the estimator, and the exclusion count is reported).
struct ObservableSpec {
    std::string name;
    std::function<std::optional<double>(const BeableConfiguration&)> fn;
};

ObservableSpec observable_position_at(int particle, double t);
ObservableSpec observable_sep_at(double t); // |x_1(t) - x_2(t)|
ObservableSpec observable_final_position(int particle);
ObservableSpec observable_flash_count(int particle);
ObservableSpec observable_first_flash_time(int particle);
ObservableSpec observable_custom(std::string name, const weight::ExprPtr& expr,
                                 const weight::Bindings& bindings);
ObservableSpec observable_delta_at(int step);
ObservableSpec observable_level_indicator(int step, int level);

struct WeightedRecord {
    std::size_t config_id = 0;
    std::uint64_t seed = 0;
    double log_weight = 0.0; // -inf for zero weight
    std::vector<std::optional<double>> observables;
};

// Ensemble of (configuration, weight, observable values) records with
// effective-sample-size diagnostics. Weights are stored in log space;
// reductions subtract the max log-weight first, so estimates are
// invariant under rescaling the weight by any positive constant.
struct WeightedEnsemble {
    std::vector<WeightedRecord> records; // sorted by config_id
    double sum_weight = 0.0;             // of exp(log w - max log w)
    double sum_weight_sq = 0.0;
    double max_log_weight = 0.0;
    double ess = 0.0;            // (sum w)^2 / sum w^2, in (0, M]
    double surviving_fraction = 0.0; // share of records with w > 0
};

struct Estimate {
    std::string observable;
    double value = 0.0;
    double std_error = 0.0; // delta-method self-normalized IS error
    double ess = 0.0;       // over the records where the observable is defined
    std::size_t m = 0;      // ensemble size
    std::size_t defined = 0;
};

struct EstimationResult {
    WeightedEnsemble ensemble;
    std::vector<Estimate> estimates;
    std::string weight_source_text;
};

// Self-normalized importance sampling for the guided measure: the
// baseline ensemble represents the unguided configuration measure, and
// Ehat[f] = sum_k w_k f(B_k) / sum_k w_k estimates the expectation under
// the reweighted measure (the normalizing constant cancels). Throws
// DegenerateMeasureError when every weight vanishes and propagates
// negative-weight errors.
EstimationResult estimate(const std::vector<BeableConfiguration>& ensemble,
                          const WeightFunction& weight,
                          const std::vector<ObservableSpec>& observables);

struct ComparisonRow {
    std::string observable;
    double baseline = 0.0;
    double guided = 0.0;
    double shift = 0.0;
    double sigma = 0.0;        // sqrt(se_b^2 + se_g^2)
    double significance = 0.0; // shift / sigma, 0 when both vanish
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    double ess_ratio = 0.0; // guided ess / baseline ess
};

ComparisonReport compare(const EstimationResult& baseline, const EstimationResult& guided);

} // namespace bgqt::reweight
