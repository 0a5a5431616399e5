#include "bgqt/wavefunction.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "bgqt/errors.hpp"
#include "bgqt/fft.hpp"

namespace bgqt {

namespace {

void normalize(Wavefunction& psi) {
    double n2 = 0.0;
    for (const auto& a : psi.amplitudes) n2 += std::norm(a);
    n2 *= psi.grid.cell_volume();
    if (!(n2 > 0.0))
        throw ConfigError("initial state has zero norm on the grid");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : psi.amplitudes) a *= inv;
}

void check_packet(const GridSpec& grid, const GaussianPacket& p) {
    if (static_cast<int>(p.center.size()) != grid.dims ||
        static_cast<int>(p.width.size()) != grid.dims ||
        static_cast<int>(p.momentum.size()) != grid.dims)
        throw ConfigError("gaussian packet needs center/width/momentum per coordinate");
    for (double w : p.width) {
        if (!(w > 0.0)) throw ConfigError("gaussian packet width must be positive");
        if (w < 2.0 * grid.spacing())
            throw ConfigError("gaussian packet width " + std::to_string(w) +
                              " is unresolvable: below two grid spacings (" +
                              std::to_string(2.0 * grid.spacing()) + ")");
    }
}

std::complex<double> packet_amplitude(const GridSpec& grid, const GaussianPacket& p,
                                      const std::array<int, 2>& idx) {
    double log_env = 0.0;
    double phase = 0.0;
    for (int d = 0; d < grid.dims; ++d) {
        const double x = grid.coord(idx[d]);
        const double dx = x - p.center[d];
        log_env -= dx * dx / (4.0 * p.width[d] * p.width[d]);
        phase += p.momentum[d] * x;
    }
    return std::polar(std::exp(log_env), phase);
}

template <typename F>
void fill_grid(Wavefunction& psi, F&& f) {
    const int p = psi.grid.points_per_dim;
    if (psi.grid.dims == 1) {
        for (int i = 0; i < p; ++i) psi.amplitudes[i] = f(std::array<int, 2>{i, 0});
    } else {
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j)
                psi.amplitudes[static_cast<std::size_t>(i) * p + j] =
                    f(std::array<int, 2>{i, j});
    }
}

} // namespace

InitialStateSpec InitialStateSpec::packet(GaussianPacket p) {
    InitialStateSpec s;
    s.variant = Variant::gaussian_packet;
    s.packets = {std::move(p)};
    return s;
}

InitialStateSpec InitialStateSpec::plane_wave(std::vector<double> k) {
    InitialStateSpec s;
    s.variant = Variant::plane_wave;
    s.wavevector = std::move(k);
    return s;
}

InitialStateSpec InitialStateSpec::harmonic_ground(double omega) {
    InitialStateSpec s;
    s.variant = Variant::harmonic_ground;
    s.omega = omega;
    return s;
}

InitialStateSpec InitialStateSpec::superposition(std::vector<GaussianPacket> packets,
                                                 std::vector<double> coefficients) {
    InitialStateSpec s;
    s.variant = Variant::superposition;
    s.packets = std::move(packets);
    s.coefficients = std::move(coefficients);
    return s;
}

Wavefunction init_state(const GridSpec& grid, const InitialStateSpec& shape) {
    grid.validate();
    Wavefunction psi;
    psi.grid = grid;
    psi.amplitudes.assign(grid.total_points(), {0.0, 0.0});
    psi.time = 0.0;

    switch (shape.variant) {
    case InitialStateSpec::Variant::gaussian_packet: {
        if (shape.packets.size() != 1)
            throw ConfigError("gaussian_packet takes exactly one packet");
        check_packet(grid, shape.packets[0]);
        fill_grid(psi, [&](const std::array<int, 2>& idx) {
            return packet_amplitude(grid, shape.packets[0], idx);
        });
        break;
    }
    case InitialStateSpec::Variant::plane_wave: {
        if (static_cast<int>(shape.wavevector.size()) != grid.dims)
            throw ConfigError("plane_wave needs one wavenumber per coordinate");
        // only whole grid modes are smooth on the torus
        const double base = 2.0 * M_PI / grid.box_length;
        for (double k : shape.wavevector) {
            const double m = k / base;
            if (std::abs(m - std::round(m)) > 1e-9)
                throw ConfigError("plane_wave wavenumber must be a multiple of 2*pi/box_length");
        }
        fill_grid(psi, [&](const std::array<int, 2>& idx) {
            double phase = 0.0;
            for (int d = 0; d < grid.dims; ++d)
                phase += shape.wavevector[d] * grid.coord(idx[d]);
            return std::polar(1.0, phase);
        });
        break;
    }
    case InitialStateSpec::Variant::harmonic_ground: {
        if (!(shape.omega > 0.0)) throw ConfigError("harmonic_ground omega must be positive");
        fill_grid(psi, [&](const std::array<int, 2>& idx) {
            double log_env = 0.0;
            for (int d = 0; d < grid.dims; ++d) {
                const double x = grid.coord(idx[d]);
                log_env -= 0.5 * grid.masses[d] * shape.omega * x * x;
            }
            return std::complex<double>(std::exp(log_env), 0.0);
        });
        break;
    }
    case InitialStateSpec::Variant::superposition: {
        if (shape.packets.empty() || shape.packets.size() > 4)
            throw ConfigError("superposition takes between one and four packets");
        std::vector<double> coeff = shape.coefficients;
        if (coeff.empty()) coeff.assign(shape.packets.size(), 1.0);
        if (coeff.size() != shape.packets.size())
            throw ConfigError("superposition needs one coefficient per packet");
        for (const auto& p : shape.packets) check_packet(grid, p);
        fill_grid(psi, [&](const std::array<int, 2>& idx) {
            std::complex<double> a{0.0, 0.0};
            for (std::size_t n = 0; n < shape.packets.size(); ++n)
                a += coeff[n] * packet_amplitude(grid, shape.packets[n], idx);
            return a;
        });
        break;
    }
    }
    normalize(psi);
    return psi;
}

Wavefunction step(const Wavefunction& psi, const PotentialSpec& potential, int n_steps) {
    return step(psi, potential, n_steps, psi.grid.dt);
}

Wavefunction step(const Wavefunction& psi, const PotentialSpec& potential, int n_steps,
                  double dt) {
    if (n_steps < 1) throw ConfigError("step requires n_steps >= 1");
    const GridSpec& g = psi.grid;
    const int p = g.points_per_dim;
    const std::size_t total = g.total_points();

    const std::vector<double> vtab = potential.tabulate(g);
    std::vector<std::complex<double>> half_v(total);
    for (std::size_t i = 0; i < total; ++i)
        half_v[i] = std::polar(1.0, -0.5 * dt * vtab[i]);

    // kinetic phase per Fourier mode: exp(-i dt sum_d k_d^2 / (2 m_d))
    std::vector<std::complex<double>> kin(total);
    if (g.dims == 1) {
        for (int i = 0; i < p; ++i) {
            const double k = mode_wavenumber(g, i);
            kin[i] = std::polar(1.0, -dt * k * k / (2.0 * g.masses[0]));
        }
    } else {
        for (int i = 0; i < p; ++i) {
            const double k0 = mode_wavenumber(g, i);
            const double e0 = k0 * k0 / (2.0 * g.masses[0]);
            for (int j = 0; j < p; ++j) {
                const double k1 = mode_wavenumber(g, j);
                kin[static_cast<std::size_t>(i) * p + j] =
                    std::polar(1.0, -dt * (e0 + k1 * k1 / (2.0 * g.masses[1])));
            }
        }
    }

    Wavefunction out = psi;
    const int n0 = g.dims == 2 ? p : 0;
    for (int s = 0; s < n_steps; ++s) {
        for (std::size_t i = 0; i < total; ++i) out.amplitudes[i] *= half_v[i];
        fft::forward(out.amplitudes.data(), n0, p);
        for (std::size_t i = 0; i < total; ++i) out.amplitudes[i] *= kin[i];
        fft::inverse(out.amplitudes.data(), n0, p);
        for (std::size_t i = 0; i < total; ++i) out.amplitudes[i] *= half_v[i];
    }
    out.time = psi.time + n_steps * dt;
    return out;
}

std::vector<double> density(const Wavefunction& psi) {
    std::vector<double> rho(psi.amplitudes.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(psi.amplitudes[i]);
    return rho;
}

std::vector<double> marginal_density(const Wavefunction& psi, int coordinate) {
    const GridSpec& g = psi.grid;
    if (coordinate < 0 || coordinate >= g.dims)
        throw ConfigError("marginal_density coordinate out of range");
    const int p = g.points_per_dim;
    if (g.dims == 1) return density(psi);

    std::vector<double> marg(p, 0.0);
    const double dx = g.spacing();
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            const double r = std::norm(psi.amplitudes[static_cast<std::size_t>(i) * p + j]);
            marg[coordinate == 0 ? i : j] += r * dx;
        }
    return marg;
}

double quadrature(const GridSpec& grid, const std::vector<double>& values) {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid.cell_volume();
}

double norm(const Wavefunction& psi) {
    double n2 = 0.0;
    for (const auto& a : psi.amplitudes) n2 += std::norm(a);
    return std::sqrt(n2 * psi.grid.cell_volume());
}

double boundary_density(const Wavefunction& psi) {
    const GridSpec& g = psi.grid;
    const int p = g.points_per_dim;
    double worst = 0.0;
    if (g.dims == 1) {
        worst = std::max(std::norm(psi.amplitudes[0]), std::norm(psi.amplitudes[p - 1]));
    } else {
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
                if (i != 0 && i != p - 1 && j != 0 && j != p - 1) continue;
                worst = std::max(worst,
                                 std::norm(psi.amplitudes[static_cast<std::size_t>(i) * p + j]));
            }
    }
    return worst;
}

double kinetic_energy(const Wavefunction& psi) {
    const GridSpec& g = psi.grid;
    const int p = g.points_per_dim;
    auto spec = psi.amplitudes;
    const int n0 = g.dims == 2 ? p : 0;
    fft::forward(spec.data(), n0, p);
    // Parseval: sum |psi_k|^2 / P^dims == sum |psi_x|^2
    double e = 0.0;
    if (g.dims == 1) {
        for (int i = 0; i < p; ++i) {
            const double k = mode_wavenumber(g, i);
            e += k * k / (2.0 * g.masses[0]) * std::norm(spec[i]);
        }
    } else {
        for (int i = 0; i < p; ++i) {
            const double k0 = mode_wavenumber(g, i);
            const double e0 = k0 * k0 / (2.0 * g.masses[0]);
            for (int j = 0; j < p; ++j) {
                const double k1 = mode_wavenumber(g, j);
                e += (e0 + k1 * k1 / (2.0 * g.masses[1])) *
                     std::norm(spec[static_cast<std::size_t>(i) * p + j]);
            }
        }
    }
    return e / static_cast<double>(g.total_points()) * g.cell_volume();
}

double potential_energy(const Wavefunction& psi, const PotentialSpec& potential) {
    const std::vector<double> vtab = potential.tabulate(psi.grid);
    double e = 0.0;
    for (std::size_t i = 0; i < vtab.size(); ++i)
        e += vtab[i] * std::norm(psi.amplitudes[i]);
    return e * psi.grid.cell_volume();
}

double total_energy(const Wavefunction& psi, const PotentialSpec& potential) {
    return kinetic_energy(psi) + potential_energy(psi, potential);
}

void write_state_csv(const Wavefunction& psi, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SimulationError("cannot open " + path + " for writing");
    const int p = psi.grid.points_per_dim;
    char line[128];
    if (psi.grid.dims == 1) {
        out << "grid_index0,re,im\n";
        for (int i = 0; i < p; ++i) {
            std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", i,
                          psi.amplitudes[i].real(), psi.amplitudes[i].imag());
            out << line;
        }
    } else {
        out << "grid_index0,grid_index1,re,im\n";
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
                const auto& a = psi.amplitudes[static_cast<std::size_t>(i) * p + j];
                std::snprintf(line, sizeof line, "%d,%d,%.17g,%.17g\n", i, j, a.real(),
                              a.imag());
                out << line;
            }
    }
}

} // namespace bgqt
