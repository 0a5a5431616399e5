#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace bgqt {

// One sampled de Broglie-Bohm trajectory set {x_1(t), ..., x_N(t)} on the
// record grid: times[k] = k * record_stride * dt, positions row-major
// (K+1) x N. Positions are wrapped into the box; wrap_events counts how
// often a particle crossed the periodic seam.
struct Trajectory {
    int particle_count = 1;
    std::vector<double> times;
    std::vector<double> positions;
    int wrap_events = 0;

    std::size_t samples() const { return times.size(); }
    double position(std::size_t k, int particle) const {
        return positions[k * particle_count + particle];
    }
};

// A single collapse event centred at x for `particle` at time t.
struct FlashRecord {
    double x = 0.0;
    int particle = 0;
    double t = 0.0;
};

// All flashes of one run, ordered by time.
struct FlashHistory {
    int particle_count = 1;
    std::vector<FlashRecord> flashes;
};

// Sequence of quasiclassical parameters: inhomogeneity scale delta_i when
// the volume is V_i, with V_1 < V_2 < ... < V_n. `levels` are the indices
// of `deltas` on the baseline chain's level grid.
struct CosmoSequence {
    std::vector<double> volumes;
    std::vector<double> deltas;
    std::vector<int> levels;

    std::size_t length() const { return deltas.size(); }
};

// One realized beable configuration B, reproducible bit-exactly from the
// model parameters and `seed`.
struct BeableConfiguration {
    enum class Kind { bohm, grw, cosmo };

    std::uint64_t seed = 0;
    double horizon = 0.0;
    std::variant<Trajectory, FlashHistory, CosmoSequence> data;

    Kind kind() const { return static_cast<Kind>(data.index()); }
    const Trajectory& trajectory() const { return std::get<Trajectory>(data); }
    const FlashHistory& flash_history() const { return std::get<FlashHistory>(data); }
    const CosmoSequence& sequence() const { return std::get<CosmoSequence>(data); }
};

inline const char* to_string(BeableConfiguration::Kind kind) {
    switch (kind) {
    case BeableConfiguration::Kind::bohm: return "bohm";
    case BeableConfiguration::Kind::grw: return "grw";
    case BeableConfiguration::Kind::cosmo: return "cosmo";
    }
    return "?";
}

} // namespace bgqt
