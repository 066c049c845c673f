#include "soflab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace soflab {

unsigned thread_cap() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SOFICITY_LAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

std::vector<std::pair<std::size_t, std::size_t>> split_range(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (n == 0) return out;
    std::size_t parts = std::min<std::size_t>(thread_cap(), n);
    std::size_t base = n / parts, rem = n % parts, lo = 0;
    for (std::size_t i = 0; i < parts; ++i) {
        std::size_t hi = lo + base + (i < rem ? 1 : 0);
        out.emplace_back(lo, hi);
        lo = hi;
    }
    return out;
}

void run_jobs(std::vector<std::function<void()>> jobs) {
    if (jobs.size() <= 1) {
        for (auto& j : jobs) j();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(jobs.size());
    for (auto& j : jobs) pool.emplace_back(std::move(j));
    for (auto& t : pool) t.join();
}

}
