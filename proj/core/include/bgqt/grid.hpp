#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace bgqt {

// Periodic configuration-space grid for N particles in one spatial
// dimension each (dims == N, N in {1, 2}). Coordinates live in
// [-box_length/2, box_length/2) with spacing box_length/points_per_dim.
struct GridSpec {
    int dims = 1;
    int points_per_dim = 256; // power of two, >= 8
    double box_length = 20.0;
    double dt = 1e-3;
    std::vector<double> masses{1.0}; // one per particle

    double spacing() const { return box_length / points_per_dim; }
    std::size_t total_points() const {
        std::size_t n = 1;
        for (int d = 0; d < dims; ++d) n *= static_cast<std::size_t>(points_per_dim);
        return n;
    }
    // quadrature weight of one grid cell (trapezoidal == Riemann on a
    // uniform periodic grid)
    double cell_volume() const {
        double v = 1.0;
        for (int d = 0; d < dims; ++d) v *= spacing();
        return v;
    }

    double coord(int index) const { return -0.5 * box_length + index * spacing(); }

    // wraps a physical coordinate into [-L/2, L/2)
    double wrap(double x) const;
    // minimal-image displacement a-b on the periodic box
    double min_image(double a, double b) const;

    std::size_t flatten(const std::array<int, 2>& idx) const {
        std::size_t f = static_cast<std::size_t>(idx[0]);
        if (dims == 2) f = f * points_per_dim + static_cast<std::size_t>(idx[1]);
        return f;
    }
    std::array<int, 2> unflatten(std::size_t f) const {
        if (dims == 1) return {static_cast<int>(f), 0};
        return {static_cast<int>(f / points_per_dim), static_cast<int>(f % points_per_dim)};
    }

    // throws ConfigError on violated invariants
    void validate() const;
};

// Fourier mode wavenumber for index j on this grid: 2*pi/L * j with j
// mapped to the signed range [-P/2, P/2).
double mode_wavenumber(const GridSpec& grid, int index);

} // namespace bgqt
