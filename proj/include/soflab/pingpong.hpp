#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "soflab/modmat.hpp"  // BigInt
#include "soflab/presentations.hpp"

namespace soflab {

/// Point of RP^{d-1}: unit vector with the first coordinate of absolute
/// value above 1e-12 made positive.
struct ProjectivePoint {
    std::vector<double> v;
};

ProjectivePoint make_projective_point(std::vector<double> raw);

/// Hyperplane of RP^{d-1} represented by its unit normal direction.
struct ProjHyperplane {
    std::vector<double> normal;
};

/// Δ(p, q) = sqrt(1 - <p,q>²), the sine of the angle between the lines.
double proj_metric(const ProjectivePoint& p, const ProjectivePoint& q);

/// Distance from a point to a hyperplane in Δ: |<p, n>|.
double point_hyperplane_distance(const ProjectivePoint& p, const ProjHyperplane& h);

// ---------------------------------------------------------------------------
// Exact integer matrices (arbitrary precision), the inputs of this module.

using IntMatrix = std::vector<std::vector<BigInt>>;

IntMatrix imat_identity(int d);
IntMatrix imat_from_rows(const std::vector<std::vector<std::int64_t>>& rows);
IntMatrix imat_mul(const IntMatrix& a, const IntMatrix& b);
BigInt imat_det(const IntMatrix& a);
/// Exact inverse; requires det = ±1 (throws InvalidInput otherwise).
IntMatrix imat_inverse(const IntMatrix& a);
IntMatrix imat_pow(const IntMatrix& a, unsigned e);
/// True iff the matrix is λ·I with λ = ±1, the projective identity.
bool imat_is_projective_identity(const IntMatrix& a);

/// Image of a projective point under the matrix (floating point).
ProjectivePoint apply_matrix(const IntMatrix& m, const ProjectivePoint& p);

// ---------------------------------------------------------------------------
// Hyperbolic classification.

enum class NotHyperbolicReason { degenerateTop, degenerateBottom, notSemisimpleAtExtremes };

struct NotHyperbolic {
    NotHyperbolicReason reason;
    std::string detail;
};

struct HyperbolicProfile {
    ProjectivePoint alpha;     // attracting fixed point of g
    ProjectivePoint alphaInv;  // attracting fixed point of g^-1
    ProjHyperplane rho;        // repelling hyperplane of g
    ProjHyperplane rhoInv;     // repelling hyperplane of g^-1
    double topGap = 0.0;       // |λ_1| / |λ_2|, > 1 for accepted profiles
    double bottomGap = 0.0;    // |λ_{d-1}| / |λ_d|, > 1 for accepted profiles
    std::vector<double> moduli;  // |eigenvalues| sorted descending
};

using HyperbolicClassification = std::variant<HyperbolicProfile, NotHyperbolic>;

/// Accepts iff the extreme |eigenvalues| are simple with ratio gaps above
/// 1 + tol and the extreme eigenvectors satisfy their eigen equations
/// within tolerance. Requires det = ±1. The default tol sits above the
/// ~1e-8 spurious splitting that floating point gives a defective double
/// eigenvalue, and far below any genuine hyperbolic gap.
HyperbolicClassification classify_hyperbolic(const IntMatrix& m, double tol = 1e-6);

/// Projection away from span(e_3..e_d) onto span(e_1, e_2): zero the tail
/// coordinates and renormalize. Throws UndefinedProjection when the first
/// two coordinates vanish within tolerance.
ProjectivePoint projection_pi(const ProjectivePoint& p, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Rooted-system checking.

struct Ball {
    ProjectivePoint center;
    double radius = 0.0;  // in Δ, so meaningful radii lie in (0, 1]
};

/// Finite union of metric balls standing in for an open set.
struct BallSet {
    std::vector<Ball> balls;
};

/// Elements g_0..g_s with their candidate open sets O_0..O_s.
struct RootedSystem {
    std::vector<IntMatrix> elements;
    std::vector<BallSet> sets;
};

struct SystemVerified {
    double minMargin = 0.0;  // smallest slack observed over every check
};

struct SystemRefuted {
    int clause = 0;  // 1 = disjointness, 2/3 = containment/exclusion, 4 = images
    std::string detail;
    std::vector<double> witness;  // concrete point violating the clause
    bool exactCertified = false;  // witness re-verified in rational arithmetic
};

struct SystemInconclusive {
    std::string detail;
    double worstSlack = 0.0;
};

using SystemCheckResult = std::variant<SystemVerified, SystemRefuted, SystemInconclusive>;

/// Checks the four rooted-system conditions on a deterministic sample grid:
/// Verified only when every check passes with at least `margin` slack;
/// Refuted carries a concrete witness (re-certified in exact rational
/// arithmetic where the data permits); Inconclusive otherwise.
SystemCheckResult check_rooted_system(const RootedSystem& system, int grid, double margin,
                                      double classifyTol = 1e-6);

// ---------------------------------------------------------------------------
// Short-relation search (freeness oracle).

struct NoRelationUpTo {
    int maxLen = 0;
    std::size_t wordsChecked = 0;
};

struct RelationFound {
    Word word;  // symbols g0, g1, ...
};

using FreeWitnessResult = std::variant<NoRelationUpTo, RelationFound>;

/// Exhausts all nontrivial reduced words up to maxLen in shortlex order
/// (exact arithmetic) and returns the first one evaluating to ±identity,
/// if any. Throws ScaleExceeded when the word count exceeds the budget.
FreeWitnessResult free_witness(const std::vector<IntMatrix>& mats, int maxLen,
                               std::size_t budget = 4'000'000);

/// Pairwise separation data for tuning ball systems: distances between all
/// attracting points and from each attracting point to each repelling
/// hyperplane.
struct ProfileDistances {
    std::vector<std::string> pointNames;      // a(g0), a(g0^-1), ...
    std::vector<std::vector<double>> pointToPoint;
    std::vector<std::string> hyperplaneNames;  // rho(g0), rho(g0^-1), ...
    std::vector<std::vector<double>> pointToHyperplane;  // [point][hyperplane]
};

ProfileDistances pairwise_profile_distances(const std::vector<IntMatrix>& mats,
                                            double classifyTol = 1e-6);

/// JSON system file: {"matrices": [[[..]]], "power": optional int,
/// "ballSets": [{"balls": [{"center": [..], "radius": r}]}]}.
RootedSystem system_from_json_text(const std::string& text);

}
