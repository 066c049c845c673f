#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "soflab/errors.hpp"

namespace soflab {

using BigInt = boost::multiprecision::cpp_int;

/// Square matrix over Z/mZ with entries kept reduced into [0, m).
/// Immutable in spirit: operations return new values. Moduli are capped
/// below 2^31 so entry products fit in 64 bits.
class ModMatrix {
public:
    ModMatrix(int dim, std::int64_t modulus);
    static ModMatrix identity(int dim, std::int64_t modulus);
    static ModMatrix from_rows(std::int64_t modulus,
                               const std::vector<std::vector<std::int64_t>>& rows);

    int dim() const { return dim_; }
    std::int64_t modulus() const { return modulus_; }
    std::int64_t at(int r, int c) const { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }
    void set(int r, int c, std::int64_t v);

    ModMatrix operator*(const ModMatrix& rhs) const;
    bool operator==(const ModMatrix& rhs) const = default;

    /// Lexicographic order on entries (row-major); requires equal dim/modulus.
    bool lex_less(const ModMatrix& rhs) const;

    /// Determinant mod m, by cofactor expansion (dims are small).
    std::int64_t det() const;

    /// Exact inverse via adjugate times det-inverse.
    /// Throws NonUnitDeterminant when det is not invertible mod m.
    ModMatrix inverse() const;

    /// Entrywise reduction into Z/m2Z. m2 need not divide the modulus.
    ModMatrix reduced_mod(std::int64_t m2) const;

    ModMatrix scaled(std::int64_t lambda) const;

    std::size_t hash() const;

    /// Text format: first line "d m", then d rows of d residues.
    std::string to_text() const;
    static ModMatrix from_text(std::istream& in);

private:
    int dim_;
    std::int64_t modulus_;
    std::vector<std::int64_t> entries_;
};

struct ModMatrixHash {
    std::size_t operator()(const ModMatrix& m) const { return m.hash(); }
};

/// Canonical representative of a PSL element: the lexicographically least
/// matrix among the scalar multiples λ·M with λ a unit and λ^d ≡ 1 (mod m).
class ProjectiveMatrix {
public:
    explicit ProjectiveMatrix(ModMatrix canonical_rep) : rep_(std::move(canonical_rep)) {}
    const ModMatrix& rep() const { return rep_; }
    bool operator==(const ProjectiveMatrix& rhs) const = default;

private:
    ModMatrix rep_;
};

/// Units λ mod m with λ^d ≡ 1 (mod m); the scalars identified away in
/// PSL_d(Z/mZ).
std::vector<std::int64_t> projective_scalars(int d, std::int64_t m);

/// Canonicalizes m, projectively when the flag is set (the flag off leaves
/// the matrix as its own representative). Requires det ≡ 1 (mod modulus).
ProjectiveMatrix canonicalize(const ModMatrix& m, bool projective = true);

/// Cardinalities from the closed forms:
///   |PSL_d(F_p)| = (1 / (gcd(d, p-1) (p-1))) ∏_{j=0}^{d-1} (p^d - p^j)
///   minimal proper-subgroup index = (p^d - 1) / (p - 1)
struct GroupCard {
    int d = 0;
    std::int64_t p = 0;
    BigInt order;
    BigInt minProperIndex;
};

GroupCard psl_order(int d, std::int64_t p);

/// The d(d-1) elementary transvections E_{ij}(1) reduced mod m.
std::vector<ModMatrix> elementary_generators(int d, std::int64_t m);

/// Upper-left 2x2 block transvections E_{12}(1), E_{21}(1) inside dim d.
std::vector<ModMatrix> psl2_block_generators(int d, std::int64_t m);

/// BFS closure of the generator set under multiplication. With `projective`
/// set, elements are identified up to projective scalars. Throws
/// ScaleExceeded past `budget` elements.
std::vector<ModMatrix> bfs_closure(const std::vector<ModMatrix>& gens, bool projective,
                                   std::size_t budget);

// Modular helpers shared across modules.
std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m);
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);  // throws NonUnitDeterminant
std::int64_t gcd64(std::int64_t a, std::int64_t b);
bool is_prime(std::int64_t n);

}
