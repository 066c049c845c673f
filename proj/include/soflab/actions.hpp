#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soflab/modmat.hpp"
#include "soflab/perm.hpp"
#include "soflab/rational.hpp"

namespace soflab {

struct LabeledGenerator {
    std::string label;
    Perm perm;
};

/// A finite point set with one permutation per generator label. Labels are
/// globally unique; named families group generator indices (a family may
/// share generators with another).
class LabeledAction {
public:
    explicit LabeledAction(std::size_t points) : points_(points) {}

    std::size_t points() const { return points_; }

    /// Adds a generator and places it in `family`. Validates bijectivity.
    void add_generator(const std::string& label, Perm perm, const std::string& family);

    /// Places an existing generator into an additional family.
    void add_to_family(const std::string& family, const std::string& label);

    const std::vector<LabeledGenerator>& generators() const { return generators_; }
    const LabeledGenerator& generator(const std::string& label) const;
    bool has_family(const std::string& name) const { return families_.count(name) > 0; }

    /// Generator indices of a family. Throws UnknownFamily.
    const std::vector<std::size_t>& family(const std::string& name) const;
    std::vector<std::string> family_names() const;

private:
    std::size_t points_;
    std::vector<LabeledGenerator> generators_;
    std::map<std::string, std::size_t> labelIndex_;
    std::map<std::string, std::vector<std::size_t>> families_;
};

/// Orbit blocks sorted by size descending, ties by least contained point;
/// each block internally ascending.
struct OrbitPartition {
    std::vector<std::vector<std::uint32_t>> blocks;
    std::vector<std::uint32_t> pointToBlock;
};

OrbitPartition orbit_partition(const LabeledAction& action, const std::string& family);

struct ContainmentWitness {
    std::vector<std::uint32_t> bOrbit;  // first B-orbit split across A-orbits
    std::uint32_t pointInOneABlock = 0;
    std::uint32_t pointInOtherABlock = 0;
};

struct ContainmentResult {
    bool contained = false;
    std::optional<ContainmentWitness> witness;
};

/// True iff every familyB orbit is a subset of some familyA orbit.
ContainmentResult orbit_containment_check(const LabeledAction& action,
                                          const std::string& familyA,
                                          const std::string& familyB);

/// Exact orbit-size extremes and their ratio. `sixteenBoundHolds` records
/// the literal 16·maxBOrbit <= N comparison; lambda > 1 is the weaker
/// condition actually consumed downstream. Both are reported, neither is
/// asserted as ground truth.
struct DensityReport {
    std::int64_t totalPoints = 0;
    std::int64_t maxBOrbit = 0;
    std::int64_t minAOrbit = 0;
    Rational lambda;
    bool sixteenBoundHolds = false;
};

DensityReport density_report(const LabeledAction& action, const std::string& familyA,
                             const std::string& familyB);

/// The action of SL_d(F_p) on the projective space P^{d-1}(F_p), with
/// family "full" (all elementary transvections) and family "psl2block"
/// (the upper-left 2x2 block transvections). Extra families may be supplied
/// as (familyName, label, matrix) triples.
struct ExtraFamilySpec {
    std::string family;
    std::string label;
    ModMatrix matrix;
};

LabeledAction projective_action(int d, std::int64_t p,
                                const std::vector<ExtraFamilySpec>& extras = {},
                                std::size_t pointBudget = 5'000'000);

/// Number of points of P^{d-1}(F_p) = (p^d - 1)/(p - 1).
std::int64_t projective_point_count(int d, std::int64_t p);

/// Enumerates the canonical projective points (first nonzero coordinate 1)
/// in deterministic order; `index_of` maps a vector to its point id.
class ProjectiveSpace {
public:
    ProjectiveSpace(int d, std::int64_t p, std::size_t pointBudget = 5'000'000);
    std::size_t size() const { return points_.size(); }
    const std::vector<std::int64_t>& point(std::size_t i) const { return points_[i]; }
    std::size_t index_of(const std::vector<std::int64_t>& v) const;  // canonicalizes
    std::size_t apply(const ModMatrix& g, std::size_t i) const;
    Perm permutation_of(const ModMatrix& g) const;

private:
    int d_;
    std::int64_t p_;
    std::vector<std::vector<std::int64_t>> points_;
    std::map<std::vector<std::int64_t>, std::size_t> index_;
};

/// Left-multiplication action of a matrix group on itself (the Cayley
/// substrate for covering checks): points are the BFS-closure elements.
struct CayleyData {
    LabeledAction action;
    std::vector<ModMatrix> elements;  // element list; index = point id
};

CayleyData cayley_action(const std::vector<std::pair<std::string, ModMatrix>>& generators,
                         bool projective, std::size_t budget = 2'000'000);

}
