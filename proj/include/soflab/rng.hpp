#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace soflab {

/// Seeded generator with self-contained bounded sampling. All randomized
/// operations in the library draw from this wrapper rather than from
/// std::*_distribution, whose output is implementation-defined; this keeps
/// reports reproducible from the recorded seed alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform value in [0, n). Modulo bias is negligible at desk scale.
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

    bool coin() { return (engine_() & 1u) != 0; }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}
