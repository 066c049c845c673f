#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "soflab/errors.hpp"

namespace soflab {

/// One letter of a group word: a generator symbol with exponent ±1.
struct Letter {
    std::string symbol;
    int exp = 1;
    bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// Free reduction: cancels adjacent inverse pairs until none remain.
/// Idempotent; never increases length.
Word free_reduce(const Word& w);

Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);

/// "t a^-1 b" <-> Word. Empty string is the empty word.
std::string word_to_string(const Word& w);
Word word_from_string(const std::string& text);

/// Applies a symbol substitution letterwise, preserving exponents.
Word map_symbols(const Word& w, const std::map<std::string, std::string>& sub);

/// Inputs for the mod-2 HNN relator list: A and B are free of equal rank,
/// phi matches a_j to b_j by index, and their generators are given as words
/// in the H-generators.
struct HNN2Presentation {
    std::vector<std::string> hGenerators;
    std::vector<Word> aWords;
    std::vector<Word> bWords;
    std::string stableLetter = "t";
    bool includeTSquare = true;
};

/// Emits t·t (when enabled) followed by t·a_j·t^-1·b_j^-1 for each j,
/// each freely reduced. Throws MismatchedRanks when |aWords| != |bWords|.
std::vector<Word> hnn_mod2_relators(const HNN2Presentation& p);

struct InvolutionCheckResult {
    bool ok = false;
    std::string reason;  // empty when ok
};

/// Checks omega(a_j) = b_j, omega(b_j) = a_j and omega² = id on symbols,
/// then asserts omega²(w) = w letterwise on `randomWords` seeded random
/// words (forced by the symbol check, but asserted anyway).
/// Throws IncompleteMap when omega misses a generator.
InvolutionCheckResult involution_check(const std::vector<std::string>& aSymbols,
                                       const std::vector<std::string>& bSymbols,
                                       const std::map<std::string, std::string>& omega,
                                       std::size_t randomWords = 100,
                                       std::uint64_t seed = 0x0df3c7a1u);

}
