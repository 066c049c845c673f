#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "soflab/actions.hpp"
#include "soflab/perm.hpp"
#include "soflab/presentations.hpp"
#include "soflab/rational.hpp"
#include "soflab/schreier.hpp"

namespace soflab {

/// Inputs of the counting argument: one action carrying the Γ generator
/// family and the Λ generator family on the same points, a candidate
/// involution-like permutation tau, and the measured expansion and orbit
/// ratio it is judged against. Optional relator words over the Γ labels
/// witness that the Γ family is a genuine action of the intended group.
struct ObstructionInstance {
    LabeledAction action;
    std::string gammaFamily = "gamma";
    std::string lambdaFamily = "lambda";
    Perm tau;
    Rational measuredC;
    Rational measuredLambda;
    std::vector<Word> gammaRelators;
};

struct PreconditionFlags {
    bool perfectOnH = false;
    bool perfectVacuous = false;  // no relators supplied
    bool containment = false;
    bool lambdaGT1 = false;
    bool tSquareDefectOK = false;  // tau² fixes at least 9/10 of the points

    bool all() const { return perfectOnH && containment && lambdaGT1 && tSquareDefectOK; }
};

struct ThetaBlock {
    std::size_t lambdaComponent = 0;  // 0-based Λ-component id of the tau-image
    std::vector<std::uint32_t> points;
    bool sizeComparisonHolds = false;  // λ·|Θ_q| <= |Ω_j|, exact rationals
};

struct ThetaStats {
    std::size_t j = 0;  // 1-based Γ-component index
    bool preconditionMet = false;  // j heavy and flags hold; stats reported regardless
    std::vector<ThetaBlock> blocks;
};

struct ObstructionReport {
    std::size_t points = 0;
    std::vector<std::size_t> componentSizes;  // |Ω_1| >= ... >= |Ω_m|
    std::size_t dSize = 0;
    std::vector<std::size_t> heavyIndices;  // 1-based
    std::size_t heavyMass = 0;
    std::vector<ThetaStats> thetaStats;  // one entry per heavy index
    std::size_t badEdgeCount = 0;
    Rational cPrime;   // measuredC · min(1, measuredLambda - 1)
    Rational bound;    // cPrime/200 · N
    bool boundHolds = false;
    PreconditionFlags flags;
    // Arithmetic consequences, checked rather than assumed:
    bool dLowerBoundImplicationHolds = false;  // t²-defect ok ⇒ |D| >= 9N/20
    bool heavyMassImplicationHolds = false;    // |D| >= 9N/20 ⇒ mass >= N/10
};

/// Caches the Γ/Λ component structure of an instance and exposes the
/// intermediate objects of the counting argument. Component indexing is
/// size-descending with ties broken by least contained vertex, fixed
/// because the definition of D depends on it.
class ObstructionEngine {
public:
    explicit ObstructionEngine(ObstructionInstance inst);

    const ObstructionInstance& instance() const { return inst_; }
    const std::vector<std::vector<std::uint32_t>>& components() const { return gamma_.blocks; }
    const std::vector<std::vector<std::uint32_t>>& lambda_components() const {
        return lambda_.blocks;
    }

    /// D = { w in Ω_j : tau(w) in Ω_k, j <= k }.
    std::vector<std::uint32_t> compute_D() const;

    /// 1-based heavy indices (|D ∩ Ω_j| >= |Ω_j|/10) and their total mass.
    std::pair<std::vector<std::size_t>, std::size_t> heavy_indices() const;

    /// Partition of D ∩ Ω_j by the Λ-component of the tau-image.
    /// j is 1-based; reported even when j is not heavy.
    ThetaStats theta_partition(std::size_t j) const;

    /// Full report: counts Γ-edges whose tau-image is not a Λ-edge and
    /// compares against (cPrime/200)·N. Precondition failures are recorded,
    /// never silently assumed away.
    ObstructionReport bad_edge_count() const;

    const MultiGraph& gamma_graph() const { return gammaGraph_; }
    const MultiGraph& lambda_graph() const { return lambdaGraph_; }

private:
    ObstructionInstance inst_;
    OrbitPartition gamma_;
    OrbitPartition lambda_;
    MultiGraph gammaGraph_;
    MultiGraph lambdaGraph_;
};

/// JSON wire format (see README): points, families {gamma: {label: perm},
/// lambda: {...}}, tau, measuredC, measuredLambda as "p/q" strings, and
/// optional gammaRelators as words.
ObstructionInstance instance_from_json_text(const std::string& text);
std::string report_to_json_text(const ObstructionReport& rep);

/// Random involution: pairs a shuffled point list (one fixed point when n
/// is odd), so tau² = id exactly.
Perm random_involution(std::size_t n, std::uint64_t seed);

/// The projective-space instance: Γ = family "full", Λ = family
/// "psl2block" on P^{d-1}(F_p), with the order-p relators s^p of the
/// elementary generators as the genuine-action witness.
ObstructionInstance make_projective_instance(int d, std::int64_t p, Perm tau,
                                             const Rational& measuredC,
                                             const Rational& measuredLambda);

}
