#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "soflab/errors.hpp"

namespace soflab {

/// A permutation of [0, N), stored as its image table.
using Perm = std::vector<std::uint32_t>;

inline Perm identity_perm(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0u);
    return p;
}

/// (a ∘ b)(x) = a(b(x)).
inline Perm compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

inline Perm inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
    return r;
}

inline bool is_permutation(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    for (auto v : p) {
        if (v >= p.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

inline bool is_identity(const Perm& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

}
