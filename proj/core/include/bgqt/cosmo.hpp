#pragma once

#include <cstdint>
#include <vector>

#include "bgqt/beable.hpp"
#include "bgqt/reweight.hpp"
#include "bgqt/weight/eval.hpp"

namespace bgqt::cosmo {

// Baseline stochastic model over sequences of inhomogeneity scales: a
// Markov chain on L discretized delta levels (geometric grid), with one
// transition matrix shared by all volume steps or one per step. The
// baseline stands in for an (unavailable) quantum cosmological measure
// and is fully configurable.
struct BaselineChain {
    std::vector<double> levels;                    // L increasing positive deltas
    std::vector<double> initial;                   // distribution over levels
    std::vector<std::vector<double>> transitions;  // 1 or n-1 row-major L x L matrices
    std::vector<double> volumes;                   // optional; default V_i = i+1

    std::size_t level_count() const { return levels.size(); }
    const std::vector<double>& transition(std::size_t step) const {
        return transitions.size() == 1 ? transitions[0] : transitions[step];
    }

    void validate(int sequence_length) const;
};

std::vector<double> make_geometric_levels(double delta_min, double delta_max, int count);

// Hard interval constraints (delta_i^min, delta_i^max) per step, soft
// per-step weight tables over levels, or an arbitrary expression over
// the delta sequence.
struct ConstraintSpec {
    enum class Variant { hard, soft_tables, soft_expr };
    Variant variant = Variant::hard;
    std::vector<std::pair<double, double>> intervals;   // hard: n pairs
    std::vector<std::vector<double>> tables;            // soft_tables: n x L factors
    weight::ExprPtr expr;                               // soft_expr
    weight::Bindings bindings;

    void validate(const BaselineChain& chain, int sequence_length) const;
};

std::vector<BeableConfiguration> sample_sequences(const BaselineChain& chain, int length,
                                                  int ensemble_size, std::uint64_t master_seed);

// Weight functional realizing a constraint: product of interval
// indicators, product of per-step factors, or the expression value.
reweight::WeightFunction constraint_weight(const ConstraintSpec& spec,
                                           const BaselineChain& chain);

// Importance-sampling estimate of the constrained (guided) measure over
// the given baseline ensemble.
reweight::EstimationResult constrain(const std::vector<BeableConfiguration>& sequences,
                                     const ConstraintSpec& spec, const BaselineChain& chain,
                                     const std::vector<reweight::ObservableSpec>& observables);

// Per-step level marginals estimated under the constrained measure,
// [step][level] -> estimate.
struct MarginalTable {
    int length = 0;
    int levels = 0;
    std::vector<reweight::Estimate> entries; // row-major step x level
    const reweight::Estimate& at(int step, int level) const {
        return entries[static_cast<std::size_t>(step) * levels + level];
    }
};

MarginalTable estimate_marginals(const std::vector<BeableConfiguration>& sequences,
                                 const ConstraintSpec& spec, const BaselineChain& chain);

// Exact conditional marginals of the constrained chain via the
// forward-backward recursion (supports hard intervals and soft tables;
// both factorize over steps). Throws DegenerateMeasureError when the
// constraint set has zero probability.
struct ExactPosterior {
    std::vector<std::vector<double>> marginals; // [step][level]
    double log_evidence = 0.0;                  // log of the surviving mass
};

ExactPosterior exact_posterior(const BaselineChain& chain, const ConstraintSpec& spec,
                               int length);

} // namespace bgqt::cosmo
