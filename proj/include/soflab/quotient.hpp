#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "soflab/modmat.hpp"
#include "soflab/perm.hpp"

namespace soflab {

struct CrtFactor {
    std::int64_t prime = 0;
    int exponent = 0;
    std::int64_t primePower = 0;
};

/// Prime-power factorization of q with entrywise reduction maps and the
/// inverse recombination.
class CrtSplit {
public:
    explicit CrtSplit(std::int64_t q);

    std::int64_t q() const { return q_; }
    const std::vector<CrtFactor>& factors() const { return factors_; }

    std::vector<ModMatrix> reduce(const ModMatrix& m) const;
    ModMatrix recombine(const std::vector<ModMatrix>& parts) const;
    std::int64_t recombine_residues(const std::vector<std::int64_t>& residues) const;

private:
    std::int64_t q_;
    std::vector<CrtFactor> factors_;
};

inline CrtSplit crt_split(std::int64_t q) { return CrtSplit(q); }

struct FrattiniProbeReport {
    int d = 0;
    std::int64_t p = 0;
    int n = 0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    BigInt kernelOrder;
    std::uint64_t seed = 0;
    std::size_t setSize = 0;
    std::size_t resamples = 0;       // mod-p stage rejections across all trials
    std::size_t groupOrderModPn = 0; // |PSL_d(Z/p^n Z)|, from closure
    std::size_t groupOrderModP = 0;  // |PSL_d(F_p)|, from closure
};

/// Per trial: samples `setSize` elements of PSL_d(Z/p^n Z), resampling
/// until the mod-p reductions generate PSL_d(F_p) (verified by closure),
/// then records a failure when the set does not generate the whole mod-p^n
/// group. Frattini elements are exactly non-generators, so the kernel claim
/// predicts zero failures. Throws ScaleExceeded past `elementBudget`.
FrattiniProbeReport frattini_probe(int d, std::int64_t p, int n, std::size_t trials,
                                   std::uint64_t seed, std::size_t setSize = 2,
                                   std::size_t elementBudget = 2'000'000);

/// Checks whether the mod-p reductions of `lifted` generate the full
/// PSL_d(F_p); the mod-p acceptance stage of the probe, exposed so callers
/// can confirm that non-generating sets are rejected there.
bool generates_psl_mod_p(const std::vector<ModMatrix>& lifted, std::int64_t p,
                         std::size_t elementBudget = 2'000'000);

/// Finite group as a multiplication table over element indices 0..n-1,
/// with 0 the identity.
class GroupTable {
public:
    static GroupTable trivial();
    static GroupTable from_generating_perms(const std::vector<Perm>& gens,
                                            std::size_t budget = 100'000);
    static GroupTable from_mod_matrices(const std::vector<ModMatrix>& gens, bool projective,
                                        std::size_t budget = 100'000);
    static GroupTable alternating(int n);

    std::size_t size() const { return n_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return 0; }
    int element_order(int a) const;
    std::vector<std::size_t> order_histogram() const;

private:
    GroupTable() = default;
    std::size_t n_ = 0;
    std::vector<int> table_;
    std::vector<int> inv_;
};

struct NormalSubgroupEntry {
    std::size_t order = 0;
    bool isSubproduct = false;   // equals H_S for some S ⊆ {1, 2}
    std::string name;            // "1", "H1", "H2", "H1xH2" or "other"
    std::vector<std::uint32_t> elements;  // pair codes a*|H2|+b, sorted
};

struct NormalSubgroupsReport {
    std::size_t productOrder = 0;
    std::vector<NormalSubgroupEntry> subgroups;  // sorted by order
    bool allSubproducts = false;
    bool factorsPossiblyIsomorphic = false;  // order + element-order histogram proxy
};

/// Enumerates the normal subgroups of H1 x H2 as joins of element normal
/// closures (one closure per conjugacy class) and verifies each against
/// the subproduct pattern. Throws ScaleExceeded when |H1|·|H2| > budget.
NormalSubgroupsReport normal_subgroups_of_product(const GroupTable& h1, const GroupTable& h2,
                                                  std::size_t budget = 20'000);

}
