#include "bgqt/potential.hpp"

#include <cmath>

#include "bgqt/errors.hpp"

namespace bgqt {

PotentialSpec PotentialSpec::make_free() {
    return PotentialSpec{};
}

PotentialSpec PotentialSpec::make_harmonic(std::vector<double> omega) {
    PotentialSpec p;
    p.variant = Variant::harmonic;
    p.omega = std::move(omega);
    return p;
}

PotentialSpec PotentialSpec::make_barrier(double height, double center, double width) {
    PotentialSpec p;
    p.variant = Variant::barrier;
    p.height = height;
    p.center = center;
    p.width = width;
    return p;
}

PotentialSpec PotentialSpec::make_double_well(double a4, double a2) {
    PotentialSpec p;
    p.variant = Variant::double_well;
    p.a4 = a4;
    p.a2 = a2;
    return p;
}

PotentialSpec PotentialSpec::make_pairwise_harmonic(double k) {
    PotentialSpec p;
    p.variant = Variant::pairwise_harmonic;
    p.k = k;
    return p;
}

double PotentialSpec::value(const GridSpec& grid, const std::array<int, 2>& idx) const {
    double v = 0.0;
    switch (variant) {
    case Variant::free:
        break;
    case Variant::harmonic:
        for (int d = 0; d < grid.dims; ++d) {
            const double x = grid.coord(idx[d]);
            const double w = omega[static_cast<std::size_t>(d) < omega.size() ? d : 0];
            v += 0.5 * grid.masses[d] * w * w * x * x;
        }
        break;
    case Variant::barrier:
        for (int d = 0; d < grid.dims; ++d) {
            const double x = grid.coord(idx[d]) - center;
            v += height * std::exp(-x * x / (2.0 * width * width));
        }
        break;
    case Variant::double_well:
        for (int d = 0; d < grid.dims; ++d) {
            const double x = grid.coord(idx[d]);
            const double x2 = x * x;
            v += a4 * x2 * x2 - a2 * x2;
        }
        break;
    case Variant::pairwise_harmonic: {
        const double dx = grid.coord(idx[0]) - grid.coord(idx[1]);
        v = 0.5 * k * dx * dx;
        break;
    }
    }
    return v;
}

std::vector<double> PotentialSpec::tabulate(const GridSpec& grid) const {
    validate(grid);
    std::vector<double> table(grid.total_points());
    const int p = grid.points_per_dim;
    if (grid.dims == 1) {
        for (int i = 0; i < p; ++i) table[i] = value(grid, {i, 0});
    } else {
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j)
                table[static_cast<std::size_t>(i) * p + j] = value(grid, {i, j});
    }
    return table;
}

void PotentialSpec::validate(const GridSpec& grid) const {
    switch (variant) {
    case Variant::free:
        break;
    case Variant::harmonic:
        if (omega.empty()) throw ConfigError("harmonic potential needs at least one omega");
        for (double w : omega)
            if (!(w > 0.0)) throw ConfigError("harmonic omega must be positive");
        break;
    case Variant::barrier:
        if (!(width > 0.0)) throw ConfigError("barrier width must be positive");
        break;
    case Variant::double_well:
        if (!(a4 > 0.0)) throw ConfigError("double_well a4 must be positive");
        break;
    case Variant::pairwise_harmonic:
        if (grid.dims != 2)
            throw ConfigError("pairwise_harmonic potential requires two particles");
        break;
    }
}

std::string PotentialSpec::name() const {
    switch (variant) {
    case Variant::free: return "free";
    case Variant::harmonic: return "harmonic";
    case Variant::barrier: return "barrier";
    case Variant::double_well: return "double_well";
    case Variant::pairwise_harmonic: return "pairwise_harmonic";
    }
    return "?";
}

} // namespace bgqt
