#include "soflab/presentations.hpp"

#include <sstream>

#include "soflab/rng.hpp"

namespace soflab {

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (const auto& l : w) {
        if (!out.empty() && out.back().symbol == l.symbol && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word word_inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->symbol, -it->exp});
    return out;
}

Word word_concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::string word_to_string(const Word& w) {
    std::ostringstream out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out << ' ';
        out << w[i].symbol;
        if (w[i].exp == -1) out << "^-1";
    }
    return out.str();
}

Word word_from_string(const std::string& text) {
    Word out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        int exp = 1;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            exp = -1;
            tok = tok.substr(0, tok.size() - 3);
        }
        if (tok.empty()) throw InvalidInput("empty symbol in word: " + text);
        out.push_back({tok, exp});
    }
    return out;
}

Word map_symbols(const Word& w, const std::map<std::string, std::string>& sub) {
    Word out;
    out.reserve(w.size());
    for (const auto& l : w) {
        auto it = sub.find(l.symbol);
        if (it == sub.end()) throw IncompleteMap("no image for symbol " + l.symbol);
        out.push_back({it->second, l.exp});
    }
    return out;
}

std::vector<Word> hnn_mod2_relators(const HNN2Presentation& p) {
    if (p.aWords.size() != p.bWords.size())
        throw MismatchedRanks("A and B generator lists differ in rank: " +
                              std::to_string(p.aWords.size()) + " vs " +
                              std::to_string(p.bWords.size()));
    std::vector<Word> out;
    const Letter t{p.stableLetter, 1};
    const Letter tInv{p.stableLetter, -1};
    if (p.includeTSquare) out.push_back(Word{t, t});
    for (std::size_t j = 0; j < p.aWords.size(); ++j) {
        Word rel;
        rel.push_back(t);
        rel = word_concat(rel, p.aWords[j]);
        rel.push_back(tInv);
        rel = word_concat(rel, word_inverse(p.bWords[j]));
        out.push_back(free_reduce(rel));
    }
    return out;
}

InvolutionCheckResult involution_check(const std::vector<std::string>& aSymbols,
                                       const std::vector<std::string>& bSymbols,
                                       const std::map<std::string, std::string>& omega,
                                       std::size_t randomWords, std::uint64_t seed) {
    if (aSymbols.size() != bSymbols.size())
        throw MismatchedRanks("generator lists differ in rank");

    std::vector<std::string> all = aSymbols;
    all.insert(all.end(), bSymbols.begin(), bSymbols.end());
    for (const auto& s : all)
        if (!omega.count(s)) throw IncompleteMap("omega undefined on generator " + s);

    for (std::size_t j = 0; j < aSymbols.size(); ++j) {
        if (omega.at(aSymbols[j]) != bSymbols[j])
            return {false, "omega(" + aSymbols[j] + ") != " + bSymbols[j] + ": omega(A) != B"};
        if (omega.at(bSymbols[j]) != aSymbols[j])
            return {false, "omega(" + bSymbols[j] + ") != " + aSymbols[j] + ": omega(B) != A"};
    }
    for (const auto& s : all) {
        const std::string& img = omega.at(s);
        if (!omega.count(img)) throw IncompleteMap("omega undefined on image symbol " + img);
        if (omega.at(img) != s) return {false, "omega^2 moves generator " + s};
    }

    // Forced by the symbol-level involution, asserted on random words anyway.
    Rng rng(seed);
    for (std::size_t trial = 0; trial < randomWords; ++trial) {
        Word w;
        std::size_t len = 1 + rng.below(12);
        for (std::size_t i = 0; i < len; ++i) {
            const std::string& sym = all[rng.below(all.size())];
            w.push_back({sym, rng.coin() ? 1 : -1});
        }
        Word twice = map_symbols(map_symbols(w, omega), omega);
        if (!(twice == w)) return {false, "omega^2 moved a word (unexpected)"};
    }
    return {true, ""};
}

}
