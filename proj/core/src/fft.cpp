#include "bgqt/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace bgqt::fft {
namespace {

std::mutex plan_mutex;

using PlanKey = std::tuple<int, int, int>; // n0, n1, sign

// FFTW plan creation is not thread-safe and not free; execution via
// fftw_execute_dft is both. Plans are created UNALIGNED so they can run
// on any caller buffer.
fftw_plan get_plan(int n0, int n1, int sign) {
    static std::map<PlanKey, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    const PlanKey key{n0, n1, sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n0 > 0 ? n0 : 1) * n1);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = n0 > 1 ? fftw_plan_dft_2d(n0, n1, buf, buf, sign, flags)
                            : fftw_plan_dft_1d(n1, buf, buf, sign, flags);
    cache.emplace(key, plan);
    return plan;
}

} // namespace

void forward(std::complex<double>* data, int n0, int n1) {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(get_plan(n0, n1, FFTW_FORWARD), buf, buf);
}

void inverse(std::complex<double>* data, int n0, int n1) {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(get_plan(n0, n1, FFTW_BACKWARD), buf, buf);
    const double scale = 1.0 / (static_cast<double>(n0 > 0 ? n0 : 1) * n1);
    const std::size_t total = static_cast<std::size_t>(n0 > 0 ? n0 : 1) * n1;
    for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
}

} // namespace bgqt::fft
