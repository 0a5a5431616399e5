#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bgqt/grid.hpp"
#include "bgqt/potential.hpp"

namespace bgqt {

// One Gaussian packet, one entry per coordinate.
// psi(x) ~ prod_d exp(-(x_d - center_d)^2 / (4 width_d^2) + i momentum_d x_d),
// so width_d is the standard deviation of the single-packet |psi|^2.
struct GaussianPacket {
    std::vector<double> center;
    std::vector<double> width;
    std::vector<double> momentum;
};

struct InitialStateSpec {
    enum class Variant { gaussian_packet, plane_wave, harmonic_ground, superposition };

    Variant variant = Variant::gaussian_packet;
    std::vector<GaussianPacket> packets;     // 1 for gaussian_packet, <= 4 for superposition
    std::vector<double> coefficients;        // superposition amplitudes, default all 1
    std::vector<double> wavevector;          // plane_wave, per coordinate, multiple of 2*pi/L
    double omega = 1.0;                      // harmonic_ground

    static InitialStateSpec packet(GaussianPacket p);
    static InitialStateSpec plane_wave(std::vector<double> k);
    static InitialStateSpec harmonic_ground(double omega);
    static InitialStateSpec superposition(std::vector<GaussianPacket> packets,
                                          std::vector<double> coefficients = {});
};

// |psi(t)> on the configuration grid; unit L2 norm after every public
// operation (hbar = 1 throughout).
struct Wavefunction {
    GridSpec grid;
    std::vector<std::complex<double>> amplitudes; // flattened row-major
    double time = 0.0;
};

Wavefunction init_state(const GridSpec& grid, const InitialStateSpec& shape);

// Symmetric (Strang) split-step spectral propagator, second order in dt:
// half potential phase, full kinetic phase in Fourier space, half
// potential phase, repeated n_steps times.
Wavefunction step(const Wavefunction& psi, const PotentialSpec& potential, int n_steps);

// Same propagator with an explicit (possibly negative) time step; a
// negative dt runs the exact inverse of the forward splitting.
Wavefunction step(const Wavefunction& psi, const PotentialSpec& potential, int n_steps,
                  double dt);

std::vector<double> density(const Wavefunction& psi);

// Density of one coordinate with all others integrated out.
std::vector<double> marginal_density(const Wavefunction& psi, int coordinate);

double norm(const Wavefunction& psi);
double quadrature(const GridSpec& grid, const std::vector<double>& values);

// Max density on the outermost grid ring. Experiments should keep
// support well inside the box; callers warn when this exceeds 1e-6.
double boundary_density(const Wavefunction& psi);

double kinetic_energy(const Wavefunction& psi);
double potential_energy(const Wavefunction& psi, const PotentialSpec& potential);
double total_energy(const Wavefunction& psi, const PotentialSpec& potential);

// Snapshot CSV: one row per grid point, columns grid_index0[,grid_index1],re,im.
void write_state_csv(const Wavefunction& psi, const std::string& path);

} // namespace bgqt
