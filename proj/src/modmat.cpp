#include "soflab/modmat.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <unordered_set>

namespace soflab {

namespace {

constexpr std::int64_t kModulusCap = (std::int64_t{1} << 31);

std::int64_t reduce(std::int64_t v, std::int64_t m) {
    v %= m;
    return v < 0 ? v + m : v;
}

}  // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = reduce(base, m);
    while (exp > 0) {
        if (exp & 1) result = (result * base) % m;
        base = (base * base) % m;
        exp >>= 1;
    }
    return result;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    a = reduce(a, m);
    std::int64_t r0 = m, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1)
        throw NonUnitDeterminant("value " + std::to_string(a) + " is not a unit mod " +
                                 std::to_string(m));
    return reduce(s0, m);
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

ModMatrix::ModMatrix(int dim, std::int64_t modulus)
    : dim_(dim), modulus_(modulus), entries_(static_cast<std::size_t>(dim) * dim, 0) {
    if (dim < 1) throw InvalidInput("matrix dimension must be positive");
    if (modulus < 2 || modulus >= kModulusCap)
        throw InvalidInput("modulus must lie in [2, 2^31)");
}

ModMatrix ModMatrix::identity(int dim, std::int64_t modulus) {
    ModMatrix m(dim, modulus);
    for (int i = 0; i < dim; ++i) m.set(i, i, 1);
    return m;
}

ModMatrix ModMatrix::from_rows(std::int64_t modulus,
                               const std::vector<std::vector<std::int64_t>>& rows) {
    ModMatrix m(static_cast<int>(rows.size()), modulus);
    for (int r = 0; r < m.dim_; ++r) {
        if (rows[r].size() != static_cast<std::size_t>(m.dim_))
            throw InvalidInput("matrix rows must be square");
        for (int c = 0; c < m.dim_; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

void ModMatrix::set(int r, int c, std::int64_t v) {
    entries_[static_cast<std::size_t>(r) * dim_ + c] = reduce(v, modulus_);
}

ModMatrix ModMatrix::operator*(const ModMatrix& rhs) const {
    if (dim_ != rhs.dim_ || modulus_ != rhs.modulus_)
        throw InvalidInput("matrix product requires equal dim and modulus");
    ModMatrix out(dim_, modulus_);
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            std::int64_t acc = 0;
            for (int k = 0; k < dim_; ++k) acc += at(i, k) * rhs.at(k, j) % modulus_;
            out.entries_[static_cast<std::size_t>(i) * dim_ + j] = acc % modulus_;
        }
    }
    return out;
}

bool ModMatrix::lex_less(const ModMatrix& rhs) const {
    return entries_ < rhs.entries_;
}

namespace {

// Cofactor expansion over the first row of the submatrix selected by
// `rows`/`cols` bitmasks. Dimensions stay tiny, so d! work is fine.
std::int64_t det_sub(const ModMatrix& m, std::uint32_t rows, std::uint32_t cols) {
    int d = m.dim();
    int r = -1;
    for (int i = 0; i < d; ++i)
        if (rows & (1u << i)) { r = i; break; }
    if (r < 0) return 1 % m.modulus();
    std::int64_t mod = m.modulus();
    std::int64_t acc = 0;
    int sign = 1;
    for (int c = 0; c < d; ++c) {
        if (!(cols & (1u << c))) continue;
        std::int64_t minor = det_sub(m, rows & ~(1u << r), cols & ~(1u << c));
        std::int64_t term = m.at(r, c) * minor % mod;
        acc = reduce(acc + sign * term, mod);
        sign = -sign;
    }
    return acc;
}

}  // namespace

std::int64_t ModMatrix::det() const {
    std::uint32_t all = (dim_ >= 32) ? ~0u : ((1u << dim_) - 1);
    return det_sub(*this, all, all);
}

ModMatrix ModMatrix::inverse() const {
    std::int64_t d = det();
    std::int64_t dinv = mod_inverse(d, modulus_);  // throws NonUnitDeterminant
    std::uint32_t all = (1u << dim_) - 1;
    ModMatrix adj(dim_, modulus_);
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            std::int64_t minor = det_sub(*this, all & ~(1u << i), all & ~(1u << j));
            std::int64_t sign = ((i + j) % 2 == 0) ? 1 : -1;
            adj.set(j, i, sign * minor % modulus_ * dinv % modulus_);
        }
    }
    return adj;
}

ModMatrix ModMatrix::reduced_mod(std::int64_t m2) const {
    ModMatrix out(dim_, m2);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out.set(i, j, at(i, j));
    return out;
}

ModMatrix ModMatrix::scaled(std::int64_t lambda) const {
    ModMatrix out(dim_, modulus_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out.set(i, j, at(i, j) * reduce(lambda, modulus_) % modulus_);
    return out;
}

std::size_t ModMatrix::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(dim_));
    mix(static_cast<std::uint64_t>(modulus_));
    for (auto e : entries_) mix(static_cast<std::uint64_t>(e));
    return static_cast<std::size_t>(h);
}

std::string ModMatrix::to_text() const {
    std::ostringstream out;
    out << dim_ << ' ' << modulus_ << '\n';
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) out << at(i, j) << (j + 1 == dim_ ? "" : " ");
        out << '\n';
    }
    return out.str();
}

ModMatrix ModMatrix::from_text(std::istream& in) {
    int d = 0;
    std::int64_t m = 0;
    if (!(in >> d >> m)) throw IoError("matrix header must be 'd m'");
    ModMatrix out(d, m);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::int64_t v;
            if (!(in >> v)) throw IoError("matrix body truncated");
            out.set(i, j, v);
        }
    return out;
}

std::vector<std::int64_t> projective_scalars(int d, std::int64_t m) {
    std::vector<std::int64_t> out;
    for (std::int64_t lam = 1; lam < m; ++lam) {
        if (gcd64(lam, m) != 1) continue;
        if (mod_pow(lam, d, m) == 1) out.push_back(lam);
    }
    return out;
}

namespace {

ModMatrix canonical_rep(const ModMatrix& m, const std::vector<std::int64_t>& scalars) {
    ModMatrix best = m;
    for (auto lam : scalars) {
        if (lam == 1) continue;
        ModMatrix cand = m.scaled(lam);
        if (cand.lex_less(best)) best = cand;
    }
    return best;
}

}  // namespace

ProjectiveMatrix canonicalize(const ModMatrix& m, bool projective) {
    if (m.det() != 1 % m.modulus())
        throw NonUnitDeterminant("canonicalize requires det ≡ 1 (mod m)");
    if (!projective) return ProjectiveMatrix(m);
    return ProjectiveMatrix(canonical_rep(m, projective_scalars(m.dim(), m.modulus())));
}

GroupCard psl_order(int d, std::int64_t p) {
    if (d < 2) throw InvalidInput("psl_order requires d >= 2");
    if (!is_prime(p)) throw InvalidInput("psl_order requires p prime");
    BigInt pd = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(d));
    BigInt prod = 1;
    BigInt pj = 1;
    for (int j = 0; j < d; ++j) {
        prod *= pd - pj;
        pj *= p;
    }
    BigInt denom = BigInt(gcd64(d, p - 1)) * (p - 1);
    GroupCard card;
    card.d = d;
    card.p = p;
    card.order = prod / denom;
    card.minProperIndex = (pd - 1) / (p - 1);
    return card;
}

std::vector<ModMatrix> elementary_generators(int d, std::int64_t m) {
    if (d < 2) throw InvalidInput("elementary generators require d >= 2");
    std::vector<ModMatrix> gens;
    gens.reserve(static_cast<std::size_t>(d) * (d - 1));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            ModMatrix g = ModMatrix::identity(d, m);
            g.set(i, j, 1);
            gens.push_back(std::move(g));
        }
    return gens;
}

std::vector<ModMatrix> psl2_block_generators(int d, std::int64_t m) {
    ModMatrix e12 = ModMatrix::identity(d, m);
    e12.set(0, 1, 1);
    ModMatrix e21 = ModMatrix::identity(d, m);
    e21.set(1, 0, 1);
    return {e12, e21};
}

std::vector<ModMatrix> bfs_closure(const std::vector<ModMatrix>& gens, bool projective,
                                   std::size_t budget) {
    if (gens.empty()) throw InvalidInput("closure of empty generator set");
    int d = gens.front().dim();
    std::int64_t m = gens.front().modulus();
    for (const auto& g : gens)
        if (g.dim() != d || g.modulus() != m)
            throw InvalidInput("closure generators must share dim and modulus");

    std::vector<std::int64_t> scalars =
        projective ? projective_scalars(d, m) : std::vector<std::int64_t>{1};
    auto canon = [&](const ModMatrix& x) { return canonical_rep(x, scalars); };

    std::unordered_set<ModMatrix, ModMatrixHash> seen;
    std::vector<ModMatrix> order;
    order.push_back(canon(ModMatrix::identity(d, m)));
    seen.insert(order.front());
    for (std::size_t head = 0; head < order.size(); ++head) {
        ModMatrix cur = order[head];
        for (const auto& g : gens) {
            ModMatrix next = canon(cur * g);
            if (seen.insert(next).second) {
                if (order.size() + 1 > budget)
                    throw ScaleExceeded("closure exceeded budget of " + std::to_string(budget));
                order.push_back(std::move(next));
            }
        }
    }
    return order;
}

}
