#include "bgqt/grw.hpp"

#include <cmath>
#include <string>

#include "bgqt/errors.hpp"
#include "bgqt/util.hpp"

namespace bgqt::grw {

void CollapseParams::validate(const GridSpec& grid, int particle_count, double horizon) const {
    if (!(lambda >= 0.0)) throw ConfigError("collapse lambda must be non-negative");
    if (!(sigma > 0.0)) throw ConfigError("collapse sigma must be positive");
    if (sigma < 2.0 * grid.spacing())
        throw ConfigError("collapse sigma must be at least two grid spacings (" +
                          std::to_string(2.0 * grid.spacing()) + ")");
    if (lambda * horizon * particle_count >= 1e6)
        throw ConfigError("expected flash count exceeds 1e6; refusing to run");
}

std::vector<std::pair<double, int>> sample_flash_times(const CollapseParams& params,
                                                       int particle_count, double horizon,
                                                       std::uint64_t seed) {
    Rng rng(seed);
    return sample_flash_times(params, particle_count, horizon, rng);
}

std::vector<std::pair<double, int>> sample_flash_times(const CollapseParams& params,
                                                       int particle_count, double horizon,
                                                       Rng& rng) {
    if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
    std::vector<std::pair<double, int>> flashes;
    if (params.lambda <= 0.0) return flashes;
    const double rate = params.lambda * particle_count;
    double t = rng.exponential(rate);
    while (t < horizon) {
        const int particle = static_cast<int>(rng.uniform_int(particle_count));
        flashes.emplace_back(t, particle);
        t += rng.exponential(rate);
    }
    return flashes;
}

std::vector<double> collapse_center_density(const Wavefunction& psi, int particle,
                                            const CollapseParams& params) {
    const GridSpec& g = psi.grid;
    if (particle < 0 || particle >= g.dims)
        throw ConfigError("collapse particle index out of range");
    const auto marg = marginal_density(psi, particle);
    const int p = g.points_per_dim;
    const double dx = g.spacing();
    const double inv_two_s2 = 1.0 / (2.0 * params.sigma * params.sigma);
    const double kernel_norm = 1.0 / (params.sigma * std::sqrt(2.0 * M_PI));

    std::vector<double> out(p, 0.0);
    for (int i = 0; i < p; ++i) {
        double acc = 0.0;
        for (int j = 0; j < p; ++j) {
            const double d = g.min_image(g.coord(i), g.coord(j));
            acc += marg[j] * std::exp(-d * d * inv_two_s2);
        }
        out[i] = acc * kernel_norm * dx;
    }
    return out;
}

CollapseResult apply_collapse(const Wavefunction& psi, int particle,
                              const CollapseParams& params, std::uint64_t seed) {
    Rng rng(seed);
    return apply_collapse(psi, particle, params, rng);
}

CollapseResult apply_collapse(const Wavefunction& psi, int particle,
                              const CollapseParams& params, Rng& rng) {
    const GridSpec& g = psi.grid;
    if (particle < 0 || particle >= g.dims)
        throw ConfigError("collapse particle index out of range");

    // p(x) = (marginal * gaussian)(x); drawing u ~ marginal (cell + jitter)
    // and adding sigma-normal noise samples exactly that convolution
    const auto marg = marginal_density(psi, particle);
    const int p = g.points_per_dim;
    const double dx = g.spacing();
    const double target = rng.uniform01();
    double acc = 0.0;
    int pick = p - 1;
    for (int i = 0; i < p; ++i) {
        acc += marg[i] * dx;
        if (target < acc) {
            pick = i;
            break;
        }
    }
    const double u = g.coord(pick) + (rng.uniform01() - 0.5) * dx;
    const double center = g.wrap(u + params.sigma * rng.normal());

    CollapseResult result;
    result.center = center;
    result.psi = psi;
    const double inv_four_s2 = 1.0 / (4.0 * params.sigma * params.sigma);
    const std::size_t total = g.total_points();
    for (std::size_t cell = 0; cell < total; ++cell) {
        const auto idx = g.unflatten(cell);
        const double d = g.min_image(g.coord(idx[particle]), center);
        result.psi.amplitudes[cell] *= std::exp(-d * d * inv_four_s2);
    }
    double n2 = 0.0;
    for (const auto& a : result.psi.amplitudes) n2 += std::norm(a);
    n2 *= g.cell_volume();
    if (n2 < 1e-12 * 1e-12)
        throw SimulationError("post-collapse norm numerically degenerate (norm^2 = " +
                              std::to_string(n2) + ", center = " + std::to_string(center) +
                              ", particle = " + std::to_string(particle) + ")");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : result.psi.amplitudes) a *= inv;
    return result;
}

void ModelConfig::validate() const {
    grid.validate();
    potential.validate(grid);
    if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
    params.validate(grid, grid.dims, horizon);
}

GrwRun run_single(const ModelConfig& config, std::uint64_t seed) {
    config.validate();
    Rng flash_rng(derive_seed(seed, 0));
    const auto flash_times =
        sample_flash_times(config.params, config.grid.dims, config.horizon, flash_rng);

    GrwRun run;
    run.history.particle_count = config.grid.dims;
    run.final_psi = init_state(config.grid, config.initial_state);

    const double dt = config.grid.dt;
    const int n_steps = static_cast<int>(std::llround(config.horizon / dt));
    int current_step = 0;
    std::uint64_t collapse_index = 1;
    for (const auto& [t_flash, particle] : flash_times) {
        // collapse applied at the nearest grid time <= t_flash
        const int flash_step = std::min(static_cast<int>(t_flash / dt), n_steps);
        if (flash_step > current_step) {
            run.final_psi = step(run.final_psi, config.potential, flash_step - current_step);
            current_step = flash_step;
        }
        Rng collapse_rng(derive_seed(seed, collapse_index++));
        auto result = apply_collapse(run.final_psi, particle, config.params, collapse_rng);
        run.final_psi = std::move(result.psi);
        run.history.flashes.push_back({result.center, particle, t_flash});
    }
    if (current_step < n_steps)
        run.final_psi = step(run.final_psi, config.potential, n_steps - current_step);
    return run;
}

std::vector<BeableConfiguration> run_grw_ensemble(const ModelConfig& config, int ensemble_size,
                                                  std::uint64_t master_seed) {
    if (ensemble_size < 1) throw ConfigError("ensemble_size must be >= 1");
    config.validate();
    std::vector<BeableConfiguration> out(ensemble_size);
    // members are independent and keyed by index, so fan-out is bit-exact
    parallel_for_index(static_cast<std::size_t>(ensemble_size), [&](std::size_t k) {
        const std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(k));
        GrwRun run = run_single(config, seed);
        out[k].seed = seed;
        out[k].horizon = config.horizon;
        out[k].data = std::move(run.history);
    });
    return out;
}

} // namespace bgqt::grw
