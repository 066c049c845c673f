#include "soflab/schreier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "soflab/parallel.hpp"
#include "soflab/rng.hpp"

namespace soflab {

namespace {

// Fixed seed for the power-iteration start vector; part of the determinism
// contract, so changing it is a breaking change.
constexpr std::uint64_t kSpectralSeed = 0x50F1AB5EEDull;
constexpr std::size_t kMaxPowerIters = 100'000;

}  // namespace

void MultiGraph::add_edge(std::uint32_t u, std::uint32_t v, const std::string& label) {
    if (u >= vertices_ || v >= vertices_)
        throw OutOfRange("edge endpoint out of range: " + std::to_string(u) + "," +
                         std::to_string(v));
    if (u > v) std::swap(u, v);
    edges_.push_back({u, v, label});
}

void MultiGraph::finalize() {
    std::sort(edges_.begin(), edges_.end(), [](const LabeledEdge& a, const LabeledEdge& b) {
        return std::tie(a.u, a.v, a.label) < std::tie(b.u, b.v, b.label);
    });
}

std::int64_t MultiGraph::degree(std::uint32_t v) const {
    std::int64_t d = 0;
    for (const auto& e : edges_) {
        if (e.u == v && e.v == v) d += 2;
        else if (e.u == v || e.v == v) d += 1;
    }
    return d;
}

std::optional<std::int64_t> MultiGraph::regular_degree() const {
    if (vertices_ == 0) return std::nullopt;
    std::vector<std::int64_t> deg(vertices_, 0);
    for (const auto& e : edges_) {
        if (e.u == e.v) deg[e.u] += 2;
        else { deg[e.u] += 1; deg[e.v] += 1; }
    }
    for (auto d : deg)
        if (d != deg[0]) return std::nullopt;
    return deg[0];
}

std::vector<std::uint32_t> MultiGraph::component_ids() const {
    std::vector<std::vector<std::uint32_t>> adj(vertices_);
    for (const auto& e : edges_) {
        if (e.u != e.v) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    }
    std::vector<std::uint32_t> id(vertices_, UINT32_MAX);
    std::uint32_t next = 0;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < vertices_; ++s) {
        if (id[s] != UINT32_MAX) continue;
        id[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : adj[v])
                if (id[w] == UINT32_MAX) {
                    id[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return id;
}

std::size_t MultiGraph::component_count() const {
    auto ids = component_ids();
    return ids.empty() ? 0 : 1 + *std::max_element(ids.begin(), ids.end());
}

MultiGraph build_schreier(const LabeledAction& action, const std::string& family) {
    const auto& gens = action.family(family);
    MultiGraph g(action.points());
    for (auto gi : gens) {
        const auto& gen = action.generators()[gi];
        for (std::uint32_t v = 0; v < action.points(); ++v)
            g.add_edge(v, gen.perm[v], gen.label);
    }
    g.finalize();
    return g;
}

std::int64_t edge_boundary_mask(const MultiGraph& g, const std::vector<bool>& inW) {
    if (inW.size() != g.vertices()) throw OutOfRange("mask size mismatch");
    std::int64_t count = 0;
    for (const auto& e : g.edges())
        if (inW[e.u] != inW[e.v]) ++count;
    return count;
}

std::int64_t edge_boundary(const MultiGraph& g, const std::vector<std::uint32_t>& w) {
    std::vector<bool> inW(g.vertices(), false);
    for (auto v : w) {
        if (v >= g.vertices()) throw OutOfRange("vertex " + std::to_string(v) + " out of range");
        inW[v] = true;
    }
    return edge_boundary_mask(g, inW);
}

namespace {

struct ScanBest {
    std::int64_t boundary = -1;
    std::int64_t size = 0;
    std::uint64_t mask = 0;   // winning vertex mask over all N bits
    std::uint64_t rank = 0;   // scan position, for deterministic ties
    bool valid = false;

    // Strictly smaller ratio wins; ties keep the earliest scan position.
    bool better_than(const ScanBest& o) const {
        if (!valid) return false;
        if (!o.valid) return true;
        auto lhs = boundary * o.size, rhs = o.boundary * size;
        if (lhs != rhs) return lhs < rhs;
        return rank < o.rank;
    }
};

}  // namespace

ExactExpansion expansion_exact(const MultiGraph& g) {
    const std::size_t n = g.vertices();
    if (n < 2) throw InvalidInput("expansion undefined: no admissible subset W");
    if (n > 24) throw ScaleExceeded("exact expansion limited to 24 vertices");

    const auto& edges = g.edges();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;
    ends.reserve(edges.size());
    for (const auto& e : edges) ends.emplace_back(e.u, e.v);

    // Vertex 0 is pinned into W; each scanned mask stands for the
    // complementary pair {W, V\W}, and each admissible side competes.
    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    auto scan = [&](std::size_t lo, std::size_t hi) {
        ScanBest best;
        for (std::uint64_t m = lo; m < static_cast<std::uint64_t>(hi); ++m) {
            std::uint64_t mask = (m << 1) | 1ull;
            std::int64_t size = std::popcount(mask);
            std::int64_t boundary = 0;
            for (const auto& [u, v] : ends)
                boundary += ((mask >> u) ^ (mask >> v)) & 1ull;
            // Side W (contains vertex 0).
            if (2 * size <= static_cast<std::int64_t>(n)) {
                ScanBest cand{boundary, size, mask, 2 * m, true};
                if (cand.better_than(best)) best = cand;
            }
            // Complement side.
            std::int64_t csize = static_cast<std::int64_t>(n) - size;
            if (csize >= 1 && 2 * csize <= static_cast<std::int64_t>(n)) {
                std::uint64_t cmask = ~mask & ((n == 64 ? ~0ull : (1ull << n) - 1));
                ScanBest cand{boundary, csize, cmask, 2 * m + 1, true};
                if (cand.better_than(best)) best = cand;
            }
        }
        return best;
    };

    auto partials = chunked_map<ScanBest>(static_cast<std::size_t>(total), scan);
    ScanBest best;
    for (const auto& p : partials)
        if (p.better_than(best)) best = p;

    ExactExpansion out;
    out.value = Rational(best.boundary, best.size);
    for (std::uint32_t v = 0; v < n; ++v)
        if ((best.mask >> v) & 1ull) out.witness.push_back(v);
    return out;
}

SpectralExpansion expansion_spectral(const MultiGraph& g, double tol) {
    auto k = g.regular_degree();
    if (!k) throw NotRegular("spectral expansion requires a regular multigraph");
    const std::size_t n = g.vertices();
    if (n < 2) throw InvalidInput("spectral expansion undefined on a single vertex");
    if (*k == 0) throw NotRegular("degree-zero graph");

    SpectralExpansion out;
    out.degree = *k;
    out.connected = g.component_count() == 1;
    if (!out.connected) {
        // λ₂ = 0 exactly; report the degenerate interval rather than a
        // numerically tiny one.
        return out;
    }

    // Adjacency with loop weight 2, consistent with the degree convention.
    std::vector<double> adj(n * n, 0.0);
    for (const auto& e : g.edges()) {
        if (e.u == e.v) adj[e.u * n + e.u] += 2.0;
        else {
            adj[e.u * n + e.v] += 1.0;
            adj[e.v * n + e.u] += 1.0;
        }
    }
    const double invK = 1.0 / static_cast<double>(*k);

    // Power iteration on the shifted operator M = 2.5·I - L = 1.5·I + A/k,
    // deflated against the constant eigenvector. The spectrum of M lies in
    // [0.5, 2.5], so the iteration never collapses, and the top remaining
    // eigenvalue is 2.5 - λ₂. Convergence: successive Rayleigh quotients
    // within tol over a short stability window.
    std::vector<double> x(n), y(n);
    Rng rng(kSpectralSeed);
    for (auto& xi : x) xi = static_cast<double>(rng.below(2'000'000)) / 1e6 - 1.0;
    auto deflate = [&](std::vector<double>& v) {
        double mean = 0;
        for (double vi : v) mean += vi;
        mean /= static_cast<double>(n);
        for (double& vi : v) vi -= mean;
    };
    auto normalize = [&](std::vector<double>& v) {
        double norm = 0;
        for (double vi : v) norm += vi * vi;
        norm = std::sqrt(norm);
        if (norm == 0.0) throw NoConvergence("power iteration collapsed to zero vector");
        for (double& vi : v) vi /= norm;
    };
    deflate(x);
    normalize(x);

    double mu = 0.0, muPrev = std::numeric_limits<double>::infinity();
    std::size_t iter = 0;
    int stable = 0;
    for (; iter < kMaxPowerIters; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 1.5 * x[i];
            const double* row = &adj[i * n];
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j] * invK;
            y[i] = acc;
        }
        deflate(y);
        mu = 0.0;
        for (std::size_t i = 0; i < n; ++i) mu += x[i] * y[i];
        stable = std::abs(mu - muPrev) < tol ? stable + 1 : 0;
        if (stable >= 5) break;
        muPrev = mu;
        normalize(y);
        x.swap(y);
    }
    if (iter == kMaxPowerIters)
        throw NoConvergence("power iteration failed to converge: tol=" + std::to_string(tol) +
                            " iters=" + std::to_string(kMaxPowerIters));

    out.iterations = iter + 1;
    out.lambda2 = std::clamp(2.5 - mu, 0.0, 2.0);
    out.lo = static_cast<double>(*k) * out.lambda2 / 2.0;
    out.hi = static_cast<double>(*k) * std::sqrt(2.0 * out.lambda2);
    return out;
}

namespace {

// Half-edge star of a vertex: (label, other endpoint), loops twice.
std::multiset<std::pair<std::string, std::uint32_t>> star(const MultiGraph& g, std::uint32_t v) {
    std::multiset<std::pair<std::string, std::uint32_t>> s;
    for (const auto& e : g.edges()) {
        if (e.u == v) s.insert({e.label, e.v});
        if (e.v == v) s.insert({e.label, e.u});
    }
    return s;
}

}  // namespace

CoveringCheckReport covering_ratio_check(const MultiGraph& cover, const MultiGraph& base,
                                         const std::vector<std::uint32_t>& fiberMap,
                                         std::size_t trials, std::uint64_t seed) {
    if (fiberMap.size() != cover.vertices())
        throw NotACovering("fiber map size differs from cover vertex count");
    std::vector<std::size_t> fiberSizes(base.vertices(), 0);
    for (auto b : fiberMap) {
        if (b >= base.vertices()) throw NotACovering("fiber map image out of range");
        ++fiberSizes[b];
    }
    for (std::uint32_t b = 0; b < base.vertices(); ++b)
        if (fiberSizes[b] == 0)
            throw NotACovering("fiber map not surjective: base vertex " + std::to_string(b) +
                               " uncovered");
    for (std::uint32_t b = 0; b + 1 < base.vertices(); ++b)
        if (fiberSizes[b] != fiberSizes[b + 1])
            throw NotACovering("fibers have unequal size at base vertex " + std::to_string(b + 1));

    // Local bijection on labeled stars: the star of v must map onto the
    // star of f(v), pushing endpoints through f.
    for (std::uint32_t v = 0; v < cover.vertices(); ++v) {
        std::multiset<std::pair<std::string, std::uint32_t>> pushed;
        for (const auto& [label, w] : star(cover, v)) pushed.insert({label, fiberMap[w]});
        auto baseStar = star(base, fiberMap[v]);
        if (pushed != baseStar) {
            std::string label = "?";
            for (const auto& half : baseStar)
                if (pushed.count(half) != baseStar.count(half)) {
                    label = half.first;
                    break;
                }
            for (const auto& half : pushed)
                if (pushed.count(half) != baseStar.count(half)) {
                    label = half.first;
                    break;
                }
            throw NotACovering("local bijection fails at cover vertex " + std::to_string(v) +
                               " on label " + label);
        }
    }

    CoveringCheckReport rep;
    rep.trials = trials;
    rep.fiberSize = fiberSizes[0];
    rep.allEqual = true;

    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<std::uint32_t> d;
        while (d.empty()) {
            d.clear();
            for (std::uint32_t b = 0; b < base.vertices(); ++b)
                if (rng.coin()) d.push_back(b);
        }
        std::vector<bool> inD(base.vertices(), false);
        for (auto b : d) inD[b] = true;
        std::vector<std::uint32_t> pre;
        for (std::uint32_t v = 0; v < cover.vertices(); ++v)
            if (inD[fiberMap[v]]) pre.push_back(v);

        Rational rBase(edge_boundary(base, d), static_cast<std::int64_t>(d.size()));
        Rational rCover(edge_boundary(cover, pre), static_cast<std::int64_t>(pre.size()));
        if (rBase != rCover && rep.allEqual) {
            rep.allEqual = false;
            rep.firstMismatch = CoveringSample{d, rBase, rCover};
        }
    }
    return rep;
}

std::string to_edge_list(const MultiGraph& g) {
    std::ostringstream out;
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.label << '\n';
    return out.str();
}

MultiGraph graph_from_edge_list(std::istream& in) {
    std::vector<LabeledEdge> edges;
    std::uint32_t maxV = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        LabeledEdge e;
        if (!(ls >> e.u >> e.v >> e.label)) throw IoError("bad edge line: " + line);
        maxV = std::max({maxV, e.u, e.v});
        edges.push_back(std::move(e));
    }
    if (edges.empty()) throw IoError("empty edge list");
    MultiGraph g(maxV + 1);
    for (const auto& e : edges) g.add_edge(e.u, e.v, e.label);
    g.finalize();
    return g;
}

std::string to_dot(const MultiGraph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (std::uint32_t v = 0; v < g.vertices(); ++v) out << "  " << v << ";\n";
    for (const auto& e : g.edges())
        out << "  " << e.u << " -- " << e.v << " [label=\"" << e.label << "\"];\n";
    out << "}\n";
    return out.str();
}

}
