#include "soflab/actions.hpp"

#include <algorithm>
#include <unordered_map>

namespace soflab {

void LabeledAction::add_generator(const std::string& label, Perm perm, const std::string& family) {
    if (perm.size() != points_)
        throw InvalidInput("generator " + label + " has wrong point count");
    if (!is_permutation(perm)) throw InvalidInput("generator " + label + " is not a bijection");
    if (labelIndex_.count(label)) throw InvalidInput("duplicate generator label " + label);
    labelIndex_[label] = generators_.size();
    families_[family].push_back(generators_.size());
    generators_.push_back({label, std::move(perm)});
}

void LabeledAction::add_to_family(const std::string& family, const std::string& label) {
    auto it = labelIndex_.find(label);
    if (it == labelIndex_.end()) throw UnknownLabel("no generator labeled " + label);
    families_[family].push_back(it->second);
}

const LabeledGenerator& LabeledAction::generator(const std::string& label) const {
    auto it = labelIndex_.find(label);
    if (it == labelIndex_.end()) throw UnknownLabel("no generator labeled " + label);
    return generators_[it->second];
}

const std::vector<std::size_t>& LabeledAction::family(const std::string& name) const {
    auto it = families_.find(name);
    if (it == families_.end()) throw UnknownFamily("no generator family named " + name);
    return it->second;
}

std::vector<std::string> LabeledAction::family_names() const {
    std::vector<std::string> names;
    names.reserve(families_.size());
    for (const auto& [name, _] : families_) names.push_back(name);
    return names;
}

OrbitPartition orbit_partition(const LabeledAction& action, const std::string& family) {
    const auto& gens = action.family(family);
    const std::size_t n = action.points();

    // Orbits of the generated group, so BFS follows images and preimages.
    std::vector<const Perm*> forward;
    std::vector<Perm> backward;
    for (auto gi : gens) {
        forward.push_back(&action.generators()[gi].perm);
        backward.push_back(inverse(action.generators()[gi].perm));
    }

    OrbitPartition part;
    part.pointToBlock.assign(n, UINT32_MAX);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t seed = 0; seed < n; ++seed) {
        if (part.pointToBlock[seed] != UINT32_MAX) continue;
        std::vector<std::uint32_t> block;
        stack.push_back(seed);
        part.pointToBlock[seed] = static_cast<std::uint32_t>(part.blocks.size());
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            block.push_back(v);
            for (std::size_t g = 0; g < forward.size(); ++g) {
                for (std::uint32_t w : {(*forward[g])[v], backward[g][v]}) {
                    if (part.pointToBlock[w] == UINT32_MAX) {
                        part.pointToBlock[w] = part.pointToBlock[seed];
                        stack.push_back(w);
                    }
                }
            }
        }
        std::sort(block.begin(), block.end());
        part.blocks.push_back(std::move(block));
    }

    // Size descending, then least contained point.
    std::vector<std::size_t> order(part.blocks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (part.blocks[a].size() != part.blocks[b].size())
            return part.blocks[a].size() > part.blocks[b].size();
        return part.blocks[a].front() < part.blocks[b].front();
    });
    std::vector<std::vector<std::uint32_t>> sorted;
    sorted.reserve(order.size());
    for (auto i : order) sorted.push_back(std::move(part.blocks[i]));
    part.blocks = std::move(sorted);
    for (std::uint32_t b = 0; b < part.blocks.size(); ++b)
        for (auto v : part.blocks[b]) part.pointToBlock[v] = b;
    return part;
}

ContainmentResult orbit_containment_check(const LabeledAction& action,
                                          const std::string& familyA,
                                          const std::string& familyB) {
    OrbitPartition aPart = orbit_partition(action, familyA);
    OrbitPartition bPart = orbit_partition(action, familyB);
    for (const auto& bBlock : bPart.blocks) {
        std::uint32_t aBlock = aPart.pointToBlock[bBlock.front()];
        for (auto v : bBlock) {
            if (aPart.pointToBlock[v] != aBlock) {
                ContainmentWitness w;
                w.bOrbit = bBlock;
                w.pointInOneABlock = bBlock.front();
                w.pointInOtherABlock = v;
                return {false, w};
            }
        }
    }
    return {true, std::nullopt};
}

DensityReport density_report(const LabeledAction& action, const std::string& familyA,
                             const std::string& familyB) {
    OrbitPartition aPart = orbit_partition(action, familyA);
    OrbitPartition bPart = orbit_partition(action, familyB);
    DensityReport rep;
    rep.totalPoints = static_cast<std::int64_t>(action.points());
    rep.minAOrbit = static_cast<std::int64_t>(aPart.blocks.back().size());
    for (const auto& blk : aPart.blocks)
        rep.minAOrbit = std::min(rep.minAOrbit, static_cast<std::int64_t>(blk.size()));
    rep.maxBOrbit = 0;
    for (const auto& blk : bPart.blocks)
        rep.maxBOrbit = std::max(rep.maxBOrbit, static_cast<std::int64_t>(blk.size()));
    rep.lambda = Rational(rep.minAOrbit, rep.maxBOrbit);
    rep.sixteenBoundHolds = 16 * rep.maxBOrbit <= rep.totalPoints;
    return rep;
}

std::int64_t projective_point_count(int d, std::int64_t p) {
    std::int64_t count = 0, power = 1;
    for (int i = 0; i < d; ++i) {
        count += power;
        power *= p;
    }
    return count;
}

ProjectiveSpace::ProjectiveSpace(int d, std::int64_t p, std::size_t pointBudget) : d_(d), p_(p) {
    if (d < 2 || !is_prime(p)) throw InvalidInput("projective space needs d >= 2 and p prime");
    std::int64_t expected = projective_point_count(d, p);
    if (expected < 0 || static_cast<std::size_t>(expected) > pointBudget)
        throw ScaleExceeded("projective space would have " + std::to_string(expected) +
                            " points, over budget");
    // Lexicographic sweep of all vectors; keep those already canonical
    // (first nonzero coordinate equal to 1).
    std::vector<std::int64_t> v(d, 0);
    while (true) {
        int firstNonzero = -1;
        for (int i = 0; i < d; ++i)
            if (v[i] != 0) { firstNonzero = i; break; }
        if (firstNonzero >= 0 && v[firstNonzero] == 1) {
            index_[v] = points_.size();
            points_.push_back(v);
        }
        int pos = d - 1;
        while (pos >= 0 && v[pos] == p - 1) v[pos--] = 0;
        if (pos < 0) break;
        ++v[pos];
    }
}

std::size_t ProjectiveSpace::index_of(const std::vector<std::int64_t>& v) const {
    int firstNonzero = -1;
    for (int i = 0; i < d_; ++i)
        if (v[i] % p_ != 0) { firstNonzero = i; break; }
    if (firstNonzero < 0) throw InvalidInput("zero vector has no projective point");
    std::vector<std::int64_t> canon(d_);
    std::int64_t scale = mod_inverse(v[firstNonzero] % p_, p_);
    for (int i = 0; i < d_; ++i) canon[i] = ((v[i] % p_ + p_) % p_) * scale % p_;
    auto it = index_.find(canon);
    if (it == index_.end()) throw InvalidInput("vector not in enumerated space");
    return it->second;
}

std::size_t ProjectiveSpace::apply(const ModMatrix& g, std::size_t i) const {
    const auto& v = points_[i];
    std::vector<std::int64_t> image(d_, 0);
    for (int r = 0; r < d_; ++r) {
        std::int64_t acc = 0;
        for (int c = 0; c < d_; ++c) acc += g.at(r, c) * v[c] % p_;
        image[r] = acc % p_;
    }
    return index_of(image);
}

Perm ProjectiveSpace::permutation_of(const ModMatrix& g) const {
    Perm perm(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i)
        perm[i] = static_cast<std::uint32_t>(apply(g, i));
    return perm;
}

LabeledAction projective_action(int d, std::int64_t p, const std::vector<ExtraFamilySpec>& extras,
                                std::size_t pointBudget) {
    ProjectiveSpace space(d, p, pointBudget);
    LabeledAction action(space.size());

    auto gens = elementary_generators(d, p);
    int idx = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            action.add_generator("full:E(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                                 space.permutation_of(gens[idx]), "full");
            ++idx;
        }
    auto blockGens = psl2_block_generators(d, p);
    action.add_generator("psl2block:E(1,2)", space.permutation_of(blockGens[0]), "psl2block");
    action.add_generator("psl2block:E(2,1)", space.permutation_of(blockGens[1]), "psl2block");
    for (const auto& spec : extras) {
        if (spec.matrix.dim() != d || spec.matrix.modulus() != p)
            throw InvalidInput("extra family matrix has wrong dim or modulus");
        action.add_generator(spec.label, space.permutation_of(spec.matrix), spec.family);
    }
    return action;
}

CayleyData cayley_action(const std::vector<std::pair<std::string, ModMatrix>>& generators,
                         bool projective, std::size_t budget) {
    if (generators.empty()) throw InvalidInput("cayley action needs generators");
    std::vector<ModMatrix> gens;
    gens.reserve(generators.size());
    for (const auto& [_, g] : generators) gens.push_back(g);
    std::vector<ModMatrix> elements = bfs_closure(gens, projective, budget);

    std::unordered_map<ModMatrix, std::size_t, ModMatrixHash> index;
    index.reserve(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = i;

    LabeledAction action(elements.size());
    for (const auto& [label, g] : generators) {
        Perm perm(elements.size());
        for (std::size_t i = 0; i < elements.size(); ++i) {
            ModMatrix image = g * elements[i];
            if (projective) image = canonicalize(image, true).rep();
            perm[i] = static_cast<std::uint32_t>(index.at(image));
        }
        action.add_generator(label, std::move(perm), "S");
    }
    return {std::move(action), std::move(elements)};
}

}
