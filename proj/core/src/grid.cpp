#include "bgqt/grid.hpp"

#include <cmath>
#include <string>

#include "bgqt/errors.hpp"

namespace bgqt {

double GridSpec::wrap(double x) const {
    const double L = box_length;
    double y = std::fmod(x + 0.5 * L, L);
    if (y < 0.0) y += L;
    return y - 0.5 * L;
}

double GridSpec::min_image(double a, double b) const {
    const double L = box_length;
    double d = std::fmod(a - b, L);
    if (d < -0.5 * L) d += L;
    if (d >= 0.5 * L) d -= L;
    return d;
}

void GridSpec::validate() const {
    if (dims != 1 && dims != 2)
        throw ConfigError("grid.dims must be 1 or 2, got " + std::to_string(dims));
    if (points_per_dim < 8 || (points_per_dim & (points_per_dim - 1)) != 0)
        throw ConfigError("grid.points_per_dim must be a power of two >= 8, got " +
                          std::to_string(points_per_dim));
    if (!(box_length > 0.0))
        throw ConfigError("grid.box_length must be positive");
    if (!(dt > 0.0))
        throw ConfigError("grid.dt must be positive");
    if (static_cast<int>(masses.size()) != dims)
        throw ConfigError("grid.masses must have one entry per particle (" +
                          std::to_string(dims) + "), got " + std::to_string(masses.size()));
    for (double m : masses)
        if (!(m > 0.0)) throw ConfigError("grid.masses entries must be positive");
}

double mode_wavenumber(const GridSpec& grid, int index) {
    const int p = grid.points_per_dim;
    const int j = index < p / 2 ? index : index - p;
    return 2.0 * M_PI / grid.box_length * j;
}

} // namespace bgqt
