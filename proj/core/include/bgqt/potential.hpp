#pragma once

#include <string>
#include <vector>

#include "bgqt/grid.hpp"

namespace bgqt {

// Time-independent potential on configuration space.
//
//   free:              V = 0
//   harmonic:          V = sum_i m_i omega_i^2 x_i^2 / 2
//   barrier:           V = sum_i height exp(-(x_i-center)^2 / (2 width^2))
//   double_well:       V = sum_i (a4 x_i^4 - a2 x_i^2)
//   pairwise_harmonic: V = k (x_1 - x_2)^2 / 2   (two particles only)
struct PotentialSpec {
    enum class Variant { free, harmonic, barrier, double_well, pairwise_harmonic };

    Variant variant = Variant::free;
    std::vector<double> omega{1.0}; // harmonic, per coordinate
    double height = 1.0;            // barrier
    double center = 0.0;            // barrier
    double width = 1.0;             // barrier, > 0
    double a4 = 1.0;                // double_well
    double a2 = 1.0;                // double_well
    double k = 1.0;                 // pairwise_harmonic

    static PotentialSpec make_free();
    static PotentialSpec make_harmonic(std::vector<double> omega);
    static PotentialSpec make_barrier(double height, double center, double width);
    static PotentialSpec make_double_well(double a4, double a2);
    static PotentialSpec make_pairwise_harmonic(double k);

    double value(const GridSpec& grid, const std::array<int, 2>& idx) const;

    // V tabulated over the full grid, flattened row-major
    std::vector<double> tabulate(const GridSpec& grid) const;

    void validate(const GridSpec& grid) const;
    std::string name() const;
};

} // namespace bgqt
