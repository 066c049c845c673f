#include "soflab/quotient.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "soflab/parallel.hpp"
#include "soflab/rng.hpp"

namespace soflab {

CrtSplit::CrtSplit(std::int64_t q) : q_(q) {
    if (q < 2) throw InvalidInput("crt split requires q >= 2");
    std::int64_t rest = q;
    for (std::int64_t f = 2; f * f <= rest; ++f) {
        if (rest % f != 0) continue;
        CrtFactor fac{f, 0, 1};
        while (rest % f == 0) {
            rest /= f;
            ++fac.exponent;
            fac.primePower *= f;
        }
        factors_.push_back(fac);
    }
    if (rest > 1) factors_.push_back({rest, 1, rest});
}

std::vector<ModMatrix> CrtSplit::reduce(const ModMatrix& m) const {
    if (m.modulus() != q_) throw InvalidInput("matrix modulus differs from split modulus");
    std::vector<ModMatrix> parts;
    parts.reserve(factors_.size());
    for (const auto& f : factors_) parts.push_back(m.reduced_mod(f.primePower));
    return parts;
}

std::int64_t CrtSplit::recombine_residues(const std::vector<std::int64_t>& residues) const {
    if (residues.size() != factors_.size()) throw InvalidInput("residue count mismatch");
    // Standard incremental CRT; moduli are pairwise coprime by construction.
    std::int64_t x = 0, mod = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        std::int64_t mi = factors_[i].primePower;
        std::int64_t ri = ((residues[i] % mi) + mi) % mi;
        std::int64_t diff = ((ri - x) % mi + mi) % mi;
        std::int64_t step = diff * mod_inverse(mod % mi, mi) % mi;
        x += step * mod;
        mod *= mi;
    }
    return ((x % q_) + q_) % q_;
}

ModMatrix CrtSplit::recombine(const std::vector<ModMatrix>& parts) const {
    if (parts.size() != factors_.size()) throw InvalidInput("component count mismatch");
    int d = parts.front().dim();
    ModMatrix out(d, q_);
    std::vector<std::int64_t> residues(parts.size());
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            for (std::size_t i = 0; i < parts.size(); ++i) residues[i] = parts[i].at(r, c);
            out.set(r, c, recombine_residues(residues));
        }
    return out;
}

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Random element of SL_d(Z/mZ) as a word in the elementary transvections.
ModMatrix random_sl_element(int d, std::int64_t m, const std::vector<ModMatrix>& gens, Rng& rng,
                            std::size_t wordLength = 24) {
    ModMatrix out = ModMatrix::identity(d, m);
    for (std::size_t i = 0; i < wordLength; ++i) out = out * gens[rng.below(gens.size())];
    return out;
}

}  // namespace

bool generates_psl_mod_p(const std::vector<ModMatrix>& lifted, std::int64_t p,
                         std::size_t elementBudget) {
    if (lifted.empty()) return false;
    int d = lifted.front().dim();
    std::vector<ModMatrix> reduced;
    reduced.reserve(lifted.size());
    for (const auto& g : lifted) reduced.push_back(g.reduced_mod(p));
    std::size_t target = bfs_closure(elementary_generators(d, p), true, elementBudget).size();
    std::size_t got = bfs_closure(reduced, true, elementBudget).size();
    return got == target;
}

FrattiniProbeReport frattini_probe(int d, std::int64_t p, int n, std::size_t trials,
                                   std::uint64_t seed, std::size_t setSize,
                                   std::size_t elementBudget) {
    if (n < 1) throw InvalidInput("frattini probe requires n >= 1");
    if (!is_prime(p)) throw InvalidInput("frattini probe requires p prime");
    const std::int64_t m = ipow(p, n);

    auto gensModPn = elementary_generators(d, m);
    auto fullModPn = bfs_closure(gensModPn, true, elementBudget);
    std::size_t orderModP = bfs_closure(elementary_generators(d, p), true, elementBudget).size();

    // Kernel of reduction onto PSL_d(F_p): count closure elements whose
    // mod-p canonical form is the identity.
    const ModMatrix idModP = ModMatrix::identity(d, p);
    BigInt kernel = 0;
    for (const auto& g : fullModPn)
        if (canonicalize(g.reduced_mod(p), true).rep() == idModP) ++kernel;

    constexpr std::size_t kResampleCap = 500;
    struct TrialOutcome {
        std::size_t failures = 0;
        std::size_t resamples = 0;
    };
    auto runTrial = [&](std::size_t trial) {
        TrialOutcome out;
        Rng rng(seed + 0x9E3779B97F4A7C15ull * (trial + 1));
        for (std::size_t attempt = 0;; ++attempt) {
            if (attempt >= kResampleCap)
                throw ScaleExceeded("mod-p generating set not found within resample cap");
            std::vector<ModMatrix> sample;
            sample.reserve(setSize);
            for (std::size_t i = 0; i < setSize; ++i)
                sample.push_back(random_sl_element(d, m, gensModPn, rng));
            if (!generates_psl_mod_p(sample, p, elementBudget)) {
                ++out.resamples;
                continue;
            }
            if (bfs_closure(sample, true, elementBudget).size() != fullModPn.size())
                ++out.failures;
            break;
        }
        return out;
    };

    auto partials = chunked_map<TrialOutcome>(trials, [&](std::size_t lo, std::size_t hi) {
        TrialOutcome acc;
        for (std::size_t t = lo; t < hi; ++t) {
            TrialOutcome one = runTrial(t);
            acc.failures += one.failures;
            acc.resamples += one.resamples;
        }
        return acc;
    });

    FrattiniProbeReport rep;
    rep.d = d;
    rep.p = p;
    rep.n = n;
    rep.trials = trials;
    rep.seed = seed;
    rep.setSize = setSize;
    rep.kernelOrder = kernel;
    rep.groupOrderModPn = fullModPn.size();
    rep.groupOrderModP = orderModP;
    for (const auto& part : partials) {
        rep.failures += part.failures;
        rep.resamples += part.resamples;
    }
    return rep;
}

GroupTable GroupTable::trivial() {
    GroupTable t;
    t.n_ = 1;
    t.table_ = {0};
    t.inv_ = {0};
    return t;
}

GroupTable GroupTable::from_generating_perms(const std::vector<Perm>& gens, std::size_t budget) {
    if (gens.empty()) throw InvalidInput("group table needs generators");
    const std::size_t deg = gens.front().size();
    for (const auto& g : gens)
        if (g.size() != deg || !is_permutation(g))
            throw InvalidInput("group table generators must be permutations of equal degree");

    std::map<Perm, int> index;
    std::vector<Perm> elems;
    elems.push_back(identity_perm(deg));
    index[elems[0]] = 0;
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : gens) {
            Perm next = compose(elems[head], g);
            if (!index.count(next)) {
                if (elems.size() + 1 > budget) throw ScaleExceeded("group closure over budget");
                index[next] = static_cast<int>(elems.size());
                elems.push_back(std::move(next));
            }
        }
    }

    GroupTable t;
    t.n_ = elems.size();
    t.table_.assign(t.n_ * t.n_, 0);
    t.inv_.assign(t.n_, 0);
    for (std::size_t a = 0; a < t.n_; ++a)
        for (std::size_t b = 0; b < t.n_; ++b)
            t.table_[a * t.n_ + b] = index.at(compose(elems[a], elems[b]));
    for (std::size_t a = 0; a < t.n_; ++a) t.inv_[a] = index.at(inverse(elems[a]));
    return t;
}

GroupTable GroupTable::from_mod_matrices(const std::vector<ModMatrix>& gens, bool projective,
                                         std::size_t budget) {
    std::vector<ModMatrix> elems = bfs_closure(gens, projective, budget);
    std::unordered_map<ModMatrix, int, ModMatrixHash> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
    auto canon = [&](const ModMatrix& x) {
        return projective ? canonicalize(x, true).rep() : x;
    };

    GroupTable t;
    t.n_ = elems.size();
    t.table_.assign(t.n_ * t.n_, 0);
    t.inv_.assign(t.n_, 0);
    for (std::size_t a = 0; a < t.n_; ++a)
        for (std::size_t b = 0; b < t.n_; ++b)
            t.table_[a * t.n_ + b] = index.at(canon(elems[a] * elems[b]));
    for (std::size_t a = 0; a < t.n_; ++a) t.inv_[a] = index.at(canon(elems[a].inverse()));
    return t;
}

GroupTable GroupTable::alternating(int n) {
    if (n < 3) throw InvalidInput("alternating table needs n >= 3");
    // (0 1 2) and, for n >= 4, an n-cycle (n odd) or (1 ... n-1) (n even).
    Perm threeCycle = identity_perm(n);
    threeCycle[0] = 1; threeCycle[1] = 2; threeCycle[2] = 0;
    std::vector<Perm> gens{threeCycle};
    if (n > 3) {
        Perm cyc = identity_perm(n);
        if (n % 2 == 1) {
            for (int i = 0; i < n; ++i) cyc[i] = static_cast<std::uint32_t>((i + 1) % n);
        } else {
            for (int i = 1; i < n; ++i) cyc[i] = static_cast<std::uint32_t>(i % (n - 1) + 1);
        }
        gens.push_back(cyc);
    }
    return from_generating_perms(gens);
}

int GroupTable::element_order(int a) const {
    int ord = 1, x = a;
    while (x != 0) {
        x = mul(x, a);
        ++ord;
    }
    return ord;
}

std::vector<std::size_t> GroupTable::order_histogram() const {
    std::map<int, std::size_t> hist;
    for (std::size_t a = 0; a < n_; ++a) ++hist[element_order(static_cast<int>(a))];
    std::vector<std::size_t> out;
    for (const auto& [ord, cnt] : hist) {
        out.push_back(static_cast<std::size_t>(ord));
        out.push_back(cnt);
    }
    return out;
}

namespace {

// Subgroup of H1 x H2 generated by `gens` (pair codes), as a sorted list.
std::vector<std::uint32_t> pair_subgroup_closure(const GroupTable& h1, const GroupTable& h2,
                                                 const std::vector<std::uint32_t>& gens) {
    const std::uint32_t n2 = static_cast<std::uint32_t>(h2.size());
    auto mulPair = [&](std::uint32_t x, std::uint32_t y) {
        return static_cast<std::uint32_t>(h1.mul(x / n2, y / n2)) * n2 +
               static_cast<std::uint32_t>(h2.mul(x % n2, y % n2));
    };
    std::vector<bool> seen(h1.size() * h2.size(), false);
    std::vector<std::uint32_t> elems{0};
    seen[0] = true;
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (auto g : gens) {
            std::uint32_t next = mulPair(elems[head], g);
            if (!seen[next]) {
                seen[next] = true;
                elems.push_back(next);
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

}  // namespace

NormalSubgroupsReport normal_subgroups_of_product(const GroupTable& h1, const GroupTable& h2,
                                                  std::size_t budget) {
    const std::size_t n1 = h1.size(), n2 = h2.size(), N = n1 * n2;
    if (N > budget)
        throw ScaleExceeded("product order " + std::to_string(N) + " over budget " +
                            std::to_string(budget));

    const std::uint32_t n2u = static_cast<std::uint32_t>(n2);
    auto conjPair = [&](std::uint32_t x, std::uint32_t a, std::uint32_t b) {
        int x1 = static_cast<int>(x / n2u), x2 = static_cast<int>(x % n2u);
        int c1 = h1.mul(h1.mul(static_cast<int>(a), x1), h1.inv(static_cast<int>(a)));
        int c2 = h2.mul(h2.mul(static_cast<int>(b), x2), h2.inv(static_cast<int>(b)));
        return static_cast<std::uint32_t>(c1) * n2u + static_cast<std::uint32_t>(c2);
    };

    // Conjugacy classes: conjugation by (a, e) and (e, b) generates the
    // full conjugation action.
    std::vector<std::uint32_t> classId(N, UINT32_MAX);
    std::vector<std::vector<std::uint32_t>> classes;
    for (std::uint32_t x = 0; x < N; ++x) {
        if (classId[x] != UINT32_MAX) continue;
        std::vector<std::uint32_t> cls{x};
        classId[x] = static_cast<std::uint32_t>(classes.size());
        for (std::size_t head = 0; head < cls.size(); ++head) {
            std::uint32_t cur = cls[head];
            for (std::uint32_t a = 0; a < n1; ++a) {
                std::uint32_t y = conjPair(cur, a, 0);
                if (classId[y] == UINT32_MAX) {
                    classId[y] = classId[x];
                    cls.push_back(y);
                }
            }
            for (std::uint32_t b = 0; b < n2; ++b) {
                std::uint32_t y = conjPair(cur, 0, b);
                if (classId[y] == UINT32_MAX) {
                    classId[y] = classId[x];
                    cls.push_back(y);
                }
            }
        }
        classes.push_back(std::move(cls));
    }

    // Normal closure of a class: the subgroup it generates (the generating
    // set is conjugation-closed, so the subgroup is normal).
    std::set<std::vector<std::uint32_t>> distinct;
    for (const auto& cls : classes)
        distinct.insert(pair_subgroup_closure(h1, h2, cls));

    // Join lattice: close the set of closures under pairwise joins.
    std::vector<std::vector<std::uint32_t>> lattice(distinct.begin(), distinct.end());
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            std::vector<std::uint32_t> unionGens = lattice[i];
            unionGens.insert(unionGens.end(), lattice[j].begin(), lattice[j].end());
            auto joined = pair_subgroup_closure(h1, h2, unionGens);
            if (std::find(lattice.begin(), lattice.end(), joined) == lattice.end())
                lattice.push_back(std::move(joined));
        }
    }
    std::sort(lattice.begin(), lattice.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size(); });

    NormalSubgroupsReport rep;
    rep.productOrder = N;
    rep.allSubproducts = true;
    for (const auto& sub : lattice) {
        NormalSubgroupEntry entry;
        entry.order = sub.size();
        entry.elements = sub;
        std::set<std::uint32_t> proj1, proj2;
        for (auto x : sub) {
            proj1.insert(x / n2u);
            proj2.insert(x % n2u);
        }
        bool p1Full = proj1.size() == n1, p1Triv = proj1.size() == 1;
        bool p2Full = proj2.size() == n2, p2Triv = proj2.size() == 1;
        entry.isSubproduct = (sub.size() == proj1.size() * proj2.size()) &&
                             (p1Full || p1Triv) && (p2Full || p2Triv);
        if (!entry.isSubproduct) entry.name = "other";
        else if (p1Triv && p2Triv) entry.name = "1";
        else if (p1Full && p2Triv) entry.name = "H1";
        else if (p1Triv && p2Full) entry.name = "H2";
        else entry.name = "H1xH2";
        rep.allSubproducts = rep.allSubproducts && entry.isSubproduct;
        rep.subgroups.push_back(std::move(entry));
    }

    rep.factorsPossiblyIsomorphic =
        n1 == n2 && h1.order_histogram() == h2.order_histogram();
    return rep;
}

}
