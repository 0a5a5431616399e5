#pragma once

#include <complex>
#include <vector>

namespace bgqt::fft {

// In-place complex DFT on a 1D (n1) or 2D (n0 x n1, row-major) array.
// Unnormalized forward transform; inverse() divides by the total size so
// that inverse(forward(x)) == x up to roundoff. Backed by FFTW with
// cached ESTIMATE plans: deterministic output for a given platform/build,
// and safe to call concurrently from several threads.
void forward(std::complex<double>* data, int n0, int n1);
void inverse(std::complex<double>* data, int n0, int n1);

inline void forward(std::vector<std::complex<double>>& v, int n0, int n1) {
    forward(v.data(), n0, n1);
}
inline void inverse(std::vector<std::complex<double>>& v, int n0, int n1) {
    inverse(v.data(), n0, n1);
}

} // namespace bgqt::fft
