#include "bgqt/bohm.hpp"

#include <algorithm>
#include <cmath>

#include "bgqt/errors.hpp"
#include "bgqt/fft.hpp"

namespace bgqt::bohm {

namespace {

// Spectral gradient of psi along coordinate d.
std::vector<std::complex<double>> gradient(const Wavefunction& psi, int d) {
    const GridSpec& g = psi.grid;
    const int p = g.points_per_dim;
    auto spec = psi.amplitudes;
    const int n0 = g.dims == 2 ? p : 0;
    fft::forward(spec.data(), n0, p);
    if (g.dims == 1) {
        for (int i = 0; i < p; ++i)
            spec[i] *= std::complex<double>(0.0, mode_wavenumber(g, i));
    } else {
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
                const double k = mode_wavenumber(g, d == 0 ? i : j);
                spec[static_cast<std::size_t>(i) * p + j] *= std::complex<double>(0.0, k);
            }
    }
    fft::inverse(spec.data(), n0, p);
    return spec;
}

} // namespace

VelocityField velocity_field(const Wavefunction& psi, double node_epsilon_factor) {
    const GridSpec& g = psi.grid;
    const std::size_t total = g.total_points();

    VelocityField field;
    field.grid = g;
    field.time = psi.time;
    field.v.assign(static_cast<std::size_t>(g.dims) * total, 0.0);
    field.singular.assign(total, 0);
    field.v_max = 0.25 * g.spacing() / g.dt;

    std::vector<double> rho(total);
    double rho_max = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        rho[i] = std::norm(psi.amplitudes[i]);
        rho_max = std::max(rho_max, rho[i]);
    }
    field.node_epsilon = node_epsilon_factor * rho_max;

    for (int d = 0; d < g.dims; ++d) {
        const auto grad = gradient(psi, d);
        // current density j_d = Im(conj(psi) d_d psi); values below the
        // roundoff floor are treated as exactly zero so real states carry
        // a strictly vanishing guidance field
        double j_max = 0.0;
        std::vector<double> j(total);
        for (std::size_t i = 0; i < total; ++i) {
            j[i] = std::imag(std::conj(psi.amplitudes[i]) * grad[i]);
            j_max = std::max(j_max, std::abs(j[i]));
        }
        const double j_floor = 1e-13 * std::max(1.0, j_max);
        const double inv_m = 1.0 / g.masses[d];
        for (std::size_t i = 0; i < total; ++i) {
            double vi;
            if (rho[i] < field.node_epsilon) {
                field.singular[i] = 1;
                vi = rho[i] > 0.0 ? j[i] / rho[i] * inv_m : 0.0;
                vi = std::clamp(vi, -field.v_max, field.v_max);
            } else {
                vi = std::abs(j[i]) <= j_floor ? 0.0 : j[i] / rho[i] * inv_m;
            }
            field.v[static_cast<std::size_t>(d) * total + i] = vi;
        }
    }
    return field;
}

std::vector<double> interpolate_velocity(const VelocityField& field,
                                         const std::vector<double>& x) {
    const GridSpec& g = field.grid;
    const int p = g.points_per_dim;
    const double dx = g.spacing();
    const std::size_t total = g.total_points();

    // cell corner and fractional offset per coordinate
    int base[2] = {0, 0};
    double frac[2] = {0.0, 0.0};
    for (int d = 0; d < g.dims; ++d) {
        const double u = (g.wrap(x[d]) + 0.5 * g.box_length) / dx;
        int i = static_cast<int>(std::floor(u));
        frac[d] = u - i;
        if (i >= p) { i -= p; }
        base[d] = i;
    }

    std::vector<double> v(g.dims, 0.0);
    bool singular = false;
    const int corners = 1 << g.dims;
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        std::array<int, 2> idx{0, 0};
        for (int d = 0; d < g.dims; ++d) {
            const bool hi = (c >> d) & 1;
            idx[d] = (base[d] + (hi ? 1 : 0)) % p;
            w *= hi ? frac[d] : 1.0 - frac[d];
        }
        const std::size_t cell = g.flatten(idx);
        if (field.singular[cell]) singular = true;
        for (int d = 0; d < g.dims; ++d)
            v[d] += w * field.v[static_cast<std::size_t>(d) * total + cell];
    }
    if (singular)
        for (int d = 0; d < g.dims; ++d) v[d] = std::clamp(v[d], -field.v_max, field.v_max);
    return v;
}

InitialDistribution InitialDistribution::equilibrium() {
    return InitialDistribution{};
}

InitialDistribution InitialDistribution::nonequilibrium(std::vector<CoordinateDensity> d) {
    InitialDistribution dist;
    dist.variant = Variant::nonequilibrium;
    dist.descriptor = std::move(d);
    return dist;
}

std::vector<double> sample_initial(const InitialDistribution& dist, const Wavefunction& psi0,
                                   std::uint64_t seed) {
    Rng rng(seed);
    return sample_initial(dist, psi0, rng);
}

std::vector<double> sample_initial(const InitialDistribution& dist, const Wavefunction& psi0,
                                   Rng& rng) {
    const GridSpec& g = psi0.grid;

    if (dist.variant == InitialDistribution::Variant::equilibrium) {
        // inverse CDF over grid cells, uniform jitter within the cell
        const auto rho = density(psi0);
        const double cell = g.cell_volume();
        double target = rng.uniform01();
        double acc = 0.0;
        std::size_t pick = rho.size() - 1;
        for (std::size_t i = 0; i < rho.size(); ++i) {
            acc += rho[i] * cell;
            if (target < acc) {
                pick = i;
                break;
            }
        }
        const auto idx = g.unflatten(pick);
        std::vector<double> x(g.dims);
        for (int d = 0; d < g.dims; ++d)
            x[d] = g.coord(idx[d]) + (rng.uniform01() - 0.5) * g.spacing();
        return x;
    }

    if (static_cast<int>(dist.descriptor.size()) != g.dims)
        throw ConfigError("nonequilibrium descriptor needs one density per coordinate");
    std::vector<double> x(g.dims);
    for (int d = 0; d < g.dims; ++d) {
        const CoordinateDensity& c = dist.descriptor[d];
        if (c.variant == CoordinateDensity::Variant::uniform_box) {
            if (!(c.lo < c.hi) || c.lo < -0.5 * g.box_length || c.hi > 0.5 * g.box_length)
                throw ConfigError("uniform_box support must lie inside the grid box");
            x[d] = rng.uniform(c.lo, c.hi);
        } else {
            if (!(c.width > 0.0)) throw ConfigError("gaussian descriptor width must be positive");
            if (std::abs(c.center) + 2.0 * c.width > 0.5 * g.box_length)
                throw ConfigError("gaussian descriptor support must lie inside the grid box");
            // resample tail draws that leave the box
            double v;
            int guard = 0;
            do {
                v = c.center + c.width * rng.normal();
            } while ((v < -0.5 * g.box_length || v >= 0.5 * g.box_length) && ++guard < 1000);
            x[d] = v;
        }
    }
    return x;
}

GuidedFlow::GuidedFlow(Wavefunction psi0, PotentialSpec potential,
                       std::vector<std::vector<double>> walkers, double node_epsilon_factor)
    : psi_(std::move(psi0)), potential_(std::move(potential)), walkers_(std::move(walkers)),
      wrap_counts_(walkers_.size(), 0), node_epsilon_factor_(node_epsilon_factor) {
    field_ = velocity_field(psi_, node_epsilon_factor_);
}

void GuidedFlow::advance_steps(int n) {
    for (int s = 0; s < n; ++s) {
        Wavefunction next = step(psi_, potential_, 1);
        const VelocityField f1 = velocity_field(next, node_epsilon_factor_);
        rk4_step(field_, f1);
        psi_ = std::move(next);
        field_ = f1;
    }
}

void GuidedFlow::rk4_step(const VelocityField& f0, const VelocityField& f1) {
    const GridSpec& g = psi_.grid;
    const double dt = g.dt;
    const std::size_t total = g.total_points();

    auto vel = [&](const std::vector<double>& x, double theta) {
        // linear interpolation in time between the bracketing snapshots
        const auto a = interpolate_velocity(f0, x);
        const auto b = interpolate_velocity(f1, x);
        std::vector<double> v(g.dims);
        for (int d = 0; d < g.dims; ++d) v[d] = (1.0 - theta) * a[d] + theta * b[d];
        return v;
    };

    auto density_at = [&](const std::vector<double>& x) {
        // nearest-cell density against the start-of-step state
        std::array<int, 2> idx{0, 0};
        for (int d = 0; d < g.dims; ++d) {
            int i = static_cast<int>(std::floor((g.wrap(x[d]) + 0.5 * g.box_length) /
                                                g.spacing() + 0.5));
            idx[d] = ((i % g.points_per_dim) + g.points_per_dim) % g.points_per_dim;
        }
        const std::size_t cell = g.flatten(idx);
        (void)total;
        return f0.singular[cell] != 0;
    };

    for (std::size_t w = 0; w < walkers_.size(); ++w) {
        auto& x = walkers_[w];
        // near a node the field is capped; subdivide for stability
        const int substeps = density_at(x) ? 8 : 1;
        if (substeps > 1) ++diag_.singular_steps;
        const double h = dt / substeps;
        for (int s = 0; s < substeps; ++s) {
            const double t0 = (s + 0.0) / substeps;
            const double tm = (s + 0.5) / substeps;
            const double t1 = (s + 1.0) / substeps;
            const auto k1 = vel(x, t0);
            std::vector<double> xt(g.dims);
            for (int d = 0; d < g.dims; ++d) xt[d] = x[d] + 0.5 * h * k1[d];
            const auto k2 = vel(xt, tm);
            for (int d = 0; d < g.dims; ++d) xt[d] = x[d] + 0.5 * h * k2[d];
            const auto k3 = vel(xt, tm);
            for (int d = 0; d < g.dims; ++d) xt[d] = x[d] + h * k3[d];
            const auto k4 = vel(xt, t1);
            for (int d = 0; d < g.dims; ++d)
                x[d] += h / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
        }
        for (int d = 0; d < g.dims; ++d) {
            const double wrapped = g.wrap(x[d]);
            if (wrapped != x[d]) {
                x[d] = wrapped;
                ++wrap_counts_[w];
                ++diag_.wrap_events;
            }
        }
    }
}

Trajectory integrate_trajectory(const Wavefunction& psi0, const PotentialSpec& potential,
                                const std::vector<double>& x0, double horizon,
                                int record_stride) {
    const GridSpec& g = psi0.grid;
    if (static_cast<int>(x0.size()) != g.dims)
        throw ConfigError("initial position needs one coordinate per particle");
    for (double c : x0)
        if (c < -0.5 * g.box_length || c >= 0.5 * g.box_length)
            throw ConfigError("initial position outside the grid box");
    if (record_stride < 1) throw ConfigError("record_stride must be >= 1");
    const double steps_real = horizon / g.dt;
    const int n_steps = static_cast<int>(std::llround(steps_real));
    if (n_steps < 1 || std::abs(steps_real - n_steps) > 1e-9 * std::max(1.0, steps_real))
        throw ConfigError("horizon must be a positive multiple of dt");
    if (n_steps % record_stride != 0)
        throw ConfigError("record_stride must divide horizon/dt");

    GuidedFlow flow(psi0, potential, {x0});
    Trajectory traj;
    traj.particle_count = g.dims;
    const int records = n_steps / record_stride;
    traj.times.reserve(records + 1);
    traj.positions.reserve((records + 1) * g.dims);

    auto record = [&](int k) {
        traj.times.push_back(k * record_stride * g.dt);
        const auto& x = flow.walkers()[0];
        traj.positions.insert(traj.positions.end(), x.begin(), x.end());
    };
    record(0);
    for (int k = 1; k <= records; ++k) {
        flow.advance_steps(record_stride);
        record(k);
    }
    traj.wrap_events = flow.wrap_counts()[0];
    return traj;
}

int ModelConfig::n_steps() const {
    return static_cast<int>(std::llround(horizon / grid.dt));
}

void ModelConfig::validate() const {
    grid.validate();
    potential.validate(grid);
    if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
    const double steps_real = horizon / grid.dt;
    const int n = static_cast<int>(std::llround(steps_real));
    if (n < 1 || std::abs(steps_real - n) > 1e-9 * std::max(1.0, steps_real))
        throw ConfigError("horizon must be a multiple of dt");
    if (record_stride < 1 || n % record_stride != 0)
        throw ConfigError("record_stride must divide horizon/dt");
}

std::vector<BeableConfiguration> run_bohm_ensemble(const ModelConfig& config, int ensemble_size,
                                                   std::uint64_t master_seed) {
    if (ensemble_size < 1) throw ConfigError("ensemble_size must be >= 1");
    config.validate();
    const Wavefunction psi0 = init_state(config.grid, config.initial_state);

    // per-member seeds fix the initial positions; the guidance flow is
    // deterministic, so walkers can share one quantum evolution
    std::vector<std::vector<double>> walkers(ensemble_size);
    std::vector<std::uint64_t> seeds(ensemble_size);
    for (int k = 0; k < ensemble_size; ++k) {
        seeds[k] = derive_seed(master_seed, static_cast<std::uint64_t>(k));
        walkers[k] = sample_initial(config.initial_distribution, psi0, seeds[k]);
    }

    GuidedFlow flow(psi0, config.potential, std::move(walkers));
    const int n_steps = config.n_steps();
    const int records = n_steps / config.record_stride;

    std::vector<Trajectory> trajs(ensemble_size);
    for (int k = 0; k < ensemble_size; ++k) {
        trajs[k].particle_count = config.grid.dims;
        trajs[k].times.reserve(records + 1);
        trajs[k].positions.reserve((records + 1) * config.grid.dims);
    }
    auto record = [&](int rec) {
        for (int k = 0; k < ensemble_size; ++k) {
            trajs[k].times.push_back(rec * config.record_stride * config.grid.dt);
            const auto& x = flow.walkers()[k];
            trajs[k].positions.insert(trajs[k].positions.end(), x.begin(), x.end());
        }
    };
    record(0);
    for (int rec = 1; rec <= records; ++rec) {
        flow.advance_steps(config.record_stride);
        record(rec);
    }

    std::vector<BeableConfiguration> out(ensemble_size);
    for (int k = 0; k < ensemble_size; ++k) {
        trajs[k].wrap_events = flow.wrap_counts()[k];
        out[k].seed = seeds[k];
        out[k].horizon = config.horizon;
        out[k].data = std::move(trajs[k]);
    }
    return out;
}

double coarse_grained_h(const std::vector<double>& positions, const Wavefunction& psi,
                        int coordinate, int bins) {
    const GridSpec& g = psi.grid;
    if (bins < 2) throw ConfigError("coarse_grained_h needs at least 2 bins");
    const auto marg = marginal_density(psi, coordinate);
    const double dx = g.spacing();
    const double bin_width = g.box_length / bins;

    std::vector<double> q(bins, 0.0);
    for (int i = 0; i < g.points_per_dim; ++i) {
        int b = static_cast<int>((g.coord(i) + 0.5 * g.box_length) / bin_width);
        b = std::clamp(b, 0, bins - 1);
        q[b] += marg[i] * dx;
    }
    std::vector<double> h(bins, 0.0);
    for (double x : positions) {
        int b = static_cast<int>((g.wrap(x) + 0.5 * g.box_length) / bin_width);
        b = std::clamp(b, 0, bins - 1);
        h[b] += 1.0;
    }
    const double inv_n = 1.0 / static_cast<double>(positions.size());
    double H = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double p = h[b] * inv_n;
        if (p > 0.0 && q[b] > 0.0) H += p * std::log(p / q[b]);
    }
    return H;
}

} // namespace bgqt::bohm
