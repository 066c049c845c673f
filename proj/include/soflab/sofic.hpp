#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "soflab/perm.hpp"
#include "soflab/presentations.hpp"
#include "soflab/rational.hpp"

namespace soflab {

/// Finite window of a sofic approximation: one permutation per base label
/// (formal inverses derive from them, so σ(s⁻¹) = σ(s)⁻¹ holds by
/// construction) plus the relator words whose defects are scored.
class SoficApprox {
public:
    explicit SoficApprox(std::size_t points) : points_(points) {}

    std::size_t points() const { return points_; }

    void assign(const std::string& label, Perm perm);
    bool has_label(const std::string& label) const { return perms_.count(label) > 0; }
    const Perm& permutation(const std::string& label) const;
    std::vector<std::string> labels() const;

    void add_relator(Word w) { relators_.push_back(std::move(w)); }
    const std::vector<Word>& relators() const { return relators_; }

    /// Right-to-left composition of the letters; empty word is the
    /// identity. Throws UnknownLabel.
    Perm evaluate_word(const Word& w) const;

private:
    std::size_t points_;
    std::map<std::string, Perm> perms_;
    std::vector<Word> relators_;
};

struct DefectReport {
    std::map<std::string, Rational> relatorDefects;          // keyed by word text
    std::map<std::string, Rational> freenessFixedFractions;  // keyed by word text
    Rational maxRelatorDefect;
};

/// relatorDefect(w) = fraction of points NOT fixed by w;
/// freenessFixedFraction(w) = fraction fixed, for the caller's test words.
DefectReport defect_report(const SoficApprox& a, const std::vector<Word>& freenessWords = {});

struct EditDistanceReport {
    std::map<std::string, Rational> perLabel;
    Rational max;
};

/// Per-label normalized Hamming distance. Requires equal point sets and
/// label sets (MismatchedModel).
EditDistanceReport edit_distance(const SoficApprox& a, const SoficApprox& b);

struct EmbeddingSpec {
    std::size_t targetSize = 0;
    std::vector<std::uint32_t> injection;  // points -> [0, targetSize)
};

/// Push-forward along the injection: permutations act as before on the
/// image and identically off it. Throws NotInjective.
SoficApprox conjugacy_embed(const SoficApprox& a, const EmbeddingSpec& spec);

struct PerfectnessResult {
    bool perfect = false;
    bool vacuous = false;  // empty relator list: true only vacuously
};

/// True iff every relator defect is exactly zero.
PerfectnessResult perfectness_check(const SoficApprox& a);

/// Text format: first line N; then "label: i0 i1 ... i{N-1}" per label;
/// optional "relators:" and "freeness:" sections with one word per line.
struct SoficFile {
    SoficApprox model;
    std::vector<Word> freenessWords;
};

SoficFile sofic_from_stream(std::istream& in);
std::string sofic_to_text(const SoficApprox& a, const std::vector<Word>& freenessWords = {});

}
