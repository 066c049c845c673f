#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "soflab/actions.hpp"
#include "soflab/rational.hpp"

namespace soflab {

/// Edge of a multigraph, stored with u <= v. Self-loops and parallel edges
/// are allowed; loops contribute 2 to a vertex degree and never to any
/// edge boundary.
struct LabeledEdge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    std::string label;
    bool operator==(const LabeledEdge&) const = default;
};

class MultiGraph {
public:
    explicit MultiGraph(std::size_t vertices) : vertices_(vertices) {}

    std::size_t vertices() const { return vertices_; }
    const std::vector<LabeledEdge>& edges() const { return edges_; }

    void add_edge(std::uint32_t u, std::uint32_t v, const std::string& label);

    /// Sorts the edge multiset into the canonical (u, v, label) order.
    void finalize();

    std::int64_t degree(std::uint32_t v) const;

    /// Common degree when the graph is regular (loops counted twice).
    std::optional<std::int64_t> regular_degree() const;

    /// Connected-component id per vertex, ids dense in discovery order.
    std::vector<std::uint32_t> component_ids() const;
    std::size_t component_count() const;

private:
    std::size_t vertices_;
    std::vector<LabeledEdge> edges_;
};

/// One edge {v, s(v)} per vertex per family generator; the result is
/// 2|S|-regular counting loops twice and parallel edges separately.
MultiGraph build_schreier(const LabeledAction& action, const std::string& family);

/// Number of edges with exactly one endpoint in W, counted with
/// multiplicity. W given as vertex ids; throws OutOfRange.
std::int64_t edge_boundary(const MultiGraph& g, const std::vector<std::uint32_t>& w);
std::int64_t edge_boundary_mask(const MultiGraph& g, const std::vector<bool>& inW);

struct ExactExpansion {
    Rational value;
    std::vector<std::uint32_t> witness;
};

/// Exact minimum of |∂W|/|W| over nonempty W with |W| <= N/2, by scanning
/// all subsets. Requires N <= 24 (throws ScaleExceeded) and N >= 2 (throws
/// InvalidInput: a single vertex admits no W).
ExactExpansion expansion_exact(const MultiGraph& g);

struct SpectralExpansion {
    double lo = 0.0;
    double hi = 0.0;
    double lambda2 = 0.0;
    bool connected = false;
    std::int64_t degree = 0;
    std::size_t iterations = 0;
};

/// Cheeger-style interval [k·λ₂/2, k·sqrt(2·λ₂)] containing the exact
/// expansion constant, with λ₂ the second-smallest normalized-Laplacian
/// eigenvalue computed by deflated power iteration from a fixed seed.
/// Disconnected graphs short-circuit to λ₂ = 0 and interval [0, 0].
/// Throws NotRegular / NoConvergence.
SpectralExpansion expansion_spectral(const MultiGraph& g, double tol = 1e-10);

struct CoveringSample {
    std::vector<std::uint32_t> baseSubset;
    Rational baseRatio;
    Rational coverRatio;
};

struct CoveringCheckReport {
    std::size_t trials = 0;
    std::size_t fiberSize = 0;
    bool allEqual = false;
    std::optional<CoveringSample> firstMismatch;
};

/// Validates that fiberMap is a surjective label-preserving covering (local
/// bijection on edge stars, constant fiber size), then asserts exact
/// rational equality ι_cover(preimage D) = ι_base(D) on sampled subsets D.
/// Throws NotACovering with a witness vertex/label.
CoveringCheckReport covering_ratio_check(const MultiGraph& cover, const MultiGraph& base,
                                         const std::vector<std::uint32_t>& fiberMap,
                                         std::size_t trials, std::uint64_t seed);

/// Text formats: one "u v label" line per edge; DOT export for inspection.
std::string to_edge_list(const MultiGraph& g);
MultiGraph graph_from_edge_list(std::istream& in);
std::string to_dot(const MultiGraph& g, const std::string& name = "G");

}
