#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bgqt/beable.hpp"
#include "bgqt/rng.hpp"
#include "bgqt/wavefunction.hpp"

namespace bgqt::grw {

// Discrete collapse model parameters: per-particle Poisson rate lambda
// and localization width sigma (std dev of the collapse kernel).
struct CollapseParams {
    double lambda = 1.0;
    double sigma = 1.0;

    void validate(const GridSpec& grid, int particle_count, double horizon) const;
};

// Homogeneous Poisson process of rate N*lambda on [0, horizon], each
// event assigned to a particle uniformly. Times strictly increasing.
std::vector<std::pair<double, int>> sample_flash_times(const CollapseParams& params,
                                                       int particle_count, double horizon,
                                                       std::uint64_t seed);
std::vector<std::pair<double, int>> sample_flash_times(const CollapseParams& params,
                                                       int particle_count, double horizon,
                                                       Rng& rng);

struct CollapseResult {
    Wavefunction psi;
    double center = 0.0;
};

// One GRW jump on coordinate `particle`: the centre x is drawn from
// p(x) = (marginal density * gaussian(sigma))(x), which integrates to 1,
// and the state is multiplied by the corresponding localization kernel
// exp(-(x_i - x)^2 / (4 sigma^2)) (minimal image) and renormalized.
CollapseResult apply_collapse(const Wavefunction& psi, int particle,
                              const CollapseParams& params, std::uint64_t seed);
CollapseResult apply_collapse(const Wavefunction& psi, int particle,
                              const CollapseParams& params, Rng& rng);

// Collapse-centre density p(x) tabulated on the grid (sums to 1 under
// grid quadrature); the sampling law of apply_collapse.
std::vector<double> collapse_center_density(const Wavefunction& psi, int particle,
                                            const CollapseParams& params);

struct ModelConfig {
    GridSpec grid;
    PotentialSpec potential;
    InitialStateSpec initial_state;
    CollapseParams params;
    double horizon = 1.0;

    void validate() const;
};

struct GrwRun {
    FlashHistory history;
    Wavefunction final_psi;
};

// One stochastic state history: unitary split-step evolution with each
// collapse applied at the nearest grid time <= its sampled flash time.
GrwRun run_single(const ModelConfig& config, std::uint64_t seed);

std::vector<BeableConfiguration> run_grw_ensemble(const ModelConfig& config, int ensemble_size,
                                                  std::uint64_t master_seed);

} // namespace bgqt::grw
