#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bgqt/beable.hpp"
#include "bgqt/grid.hpp"
#include "bgqt/rng.hpp"
#include "bgqt/wavefunction.hpp"

namespace bgqt::bohm {

// Guidance velocity v_d = Im(d_d psi / psi) / m_d on the grid,
// component-major: v[d * total + cell]. Cells with density below
// node_epsilon carry the singular flag and a velocity clamped to v_max.
struct VelocityField {
    GridSpec grid;
    double time = 0.0;
    std::vector<double> v;
    std::vector<std::uint8_t> singular;
    double node_epsilon = 0.0;
    double v_max = 0.0;

    double component(int d, std::size_t cell) const {
        return v[static_cast<std::size_t>(d) * grid.total_points() + cell];
    }
};

// Fraction of the peak density below which the guidance field counts as
// singular (the phase gradient blows up at nodes).
inline constexpr double kNodeEpsilonFactor = 1e-12;

VelocityField velocity_field(const Wavefunction& psi,
                             double node_epsilon_factor = kNodeEpsilonFactor);

// Interpolates the field multilinearly at a (wrapped) position.
// Singular lookup clamps each component to +-v_max.
std::vector<double> interpolate_velocity(const VelocityField& field,
                                         const std::vector<double>& x);

// Initial position law. `equilibrium` draws from |psi(0)|^2;
// `nonequilibrium` from an independent product density per coordinate.
struct CoordinateDensity {
    enum class Variant { gaussian, uniform_box };
    Variant variant = Variant::gaussian;
    double center = 0.0;
    double width = 1.0; // gaussian std dev
    double lo = -0.5;   // uniform_box bounds
    double hi = 0.5;
};

struct InitialDistribution {
    enum class Variant { equilibrium, nonequilibrium };
    Variant variant = Variant::equilibrium;
    std::vector<CoordinateDensity> descriptor; // one per coordinate when nonequilibrium

    static InitialDistribution equilibrium();
    static InitialDistribution nonequilibrium(std::vector<CoordinateDensity> descriptor);
};

std::vector<double> sample_initial(const InitialDistribution& dist, const Wavefunction& psi0,
                                   std::uint64_t seed);
std::vector<double> sample_initial(const InitialDistribution& dist, const Wavefunction& psi0,
                                   Rng& rng);

// Integration diagnostics shared by single-trajectory and ensemble runs.
struct FlowDiagnostics {
    int wrap_events = 0;
    int singular_steps = 0; // quantum steps that hit the node guard for some walker
};

// Advances the quantum state with the split-step propagator and carries a
// set of walker positions along the guidance flow: classical RK4 per
// quantum step, with the velocity field refreshed each step and
// interpolated multilinearly in space and linearly in time between the
// two bracketing snapshots. Walkers do not interact, so results per
// walker are independent of how many share the flow.
class GuidedFlow {
public:
    GuidedFlow(Wavefunction psi0, PotentialSpec potential,
               std::vector<std::vector<double>> walkers,
               double node_epsilon_factor = kNodeEpsilonFactor);

    void advance_steps(int n);

    const Wavefunction& psi() const { return psi_; }
    const std::vector<std::vector<double>>& walkers() const { return walkers_; }
    const std::vector<int>& wrap_counts() const { return wrap_counts_; }
    FlowDiagnostics diagnostics() const { return diag_; }

private:
    void rk4_step(const VelocityField& f0, const VelocityField& f1);

    Wavefunction psi_;
    PotentialSpec potential_;
    std::vector<std::vector<double>> walkers_;
    std::vector<int> wrap_counts_;
    VelocityField field_;
    double node_epsilon_factor_;
    FlowDiagnostics diag_;
};

Trajectory integrate_trajectory(const Wavefunction& psi0, const PotentialSpec& potential,
                                const std::vector<double>& x0, double horizon,
                                int record_stride);

struct ModelConfig {
    GridSpec grid;
    PotentialSpec potential;
    InitialStateSpec initial_state;
    InitialDistribution initial_distribution;
    double horizon = 1.0;
    int record_stride = 1;

    int n_steps() const;
    void validate() const;
};

// M independent trajectory configurations; member k is seeded with
// derive_seed(master_seed, k), so the ensemble is reproducible and
// order-independent.
std::vector<BeableConfiguration> run_bohm_ensemble(const ModelConfig& config, int ensemble_size,
                                                   std::uint64_t master_seed);

// Coarse-grained relative entropy sum_b rho_b log(rho_b / q_b) between the
// walker histogram and |psi|^2 on `bins` uniform cells of one coordinate.
// Diagnostic for relaxation towards quantum equilibrium; not monotone.
double coarse_grained_h(const std::vector<double>& positions, const Wavefunction& psi,
                        int coordinate, int bins);

} // namespace bgqt::bohm
