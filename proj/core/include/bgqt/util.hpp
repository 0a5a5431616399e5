#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace bgqt {

// Worker count for ensemble fan-out: BGQT_WORKERS when set, else 1.
inline int worker_count() {
    if (const char* env = std::getenv("BGQT_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

// Runs fn(i) for i in [0, n). Work is sharded across workers; callers
// store results by index, so output is identical for any worker count.
inline void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int workers = worker_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < n;
                 i += static_cast<std::size_t>(workers))
                fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

// FNV-1a 64-bit, used for output manifest content hashes.
inline std::uint64_t fnv1a64(const void* data, std::size_t size,
                             std::uint64_t hash = 0xCBF29CE484222325ull) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001B3ull;
    }
    return hash;
}

inline std::uint64_t fnv1a64(const std::string& s,
                             std::uint64_t hash = 0xCBF29CE484222325ull) {
    return fnv1a64(s.data(), s.size(), hash);
}

std::string read_file(const std::string& path); // throws ConfigError when unreadable

} // namespace bgqt
