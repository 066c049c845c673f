#include "soflab/sofic.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace soflab {

void SoficApprox::assign(const std::string& label, Perm perm) {
    if (perm.size() != points_) throw InvalidInput("assignment for " + label + " has wrong size");
    if (!is_permutation(perm)) throw InvalidInput("assignment for " + label + " is not a bijection");
    perms_[label] = std::move(perm);
}

const Perm& SoficApprox::permutation(const std::string& label) const {
    auto it = perms_.find(label);
    if (it == perms_.end()) throw UnknownLabel("no assignment for label " + label);
    return it->second;
}

std::vector<std::string> SoficApprox::labels() const {
    std::vector<std::string> out;
    out.reserve(perms_.size());
    for (const auto& [l, _] : perms_) out.push_back(l);
    return out;
}

Perm SoficApprox::evaluate_word(const Word& w) const {
    Perm acc = identity_perm(points_);
    for (const auto& letter : w) {
        const Perm& base = permutation(letter.symbol);
        acc = letter.exp == 1 ? compose(acc, base) : compose(acc, inverse(base));
    }
    return acc;
}

namespace {

Rational moved_fraction(const Perm& p) {
    std::int64_t moved = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != i) ++moved;
    return Rational(moved, static_cast<std::int64_t>(p.size()));
}

}  // namespace

DefectReport defect_report(const SoficApprox& a, const std::vector<Word>& freenessWords) {
    DefectReport rep;
    rep.maxRelatorDefect = Rational(0);
    for (const auto& w : a.relators()) {
        Rational defect = moved_fraction(a.evaluate_word(w));
        rep.relatorDefects[word_to_string(w)] = defect;
        rep.maxRelatorDefect = std::max(rep.maxRelatorDefect, defect);
    }
    for (const auto& w : freenessWords) {
        Rational fixed = Rational(1) - moved_fraction(a.evaluate_word(w));
        rep.freenessFixedFractions[word_to_string(w)] = fixed;
    }
    return rep;
}

EditDistanceReport edit_distance(const SoficApprox& a, const SoficApprox& b) {
    if (a.points() != b.points())
        throw MismatchedModel("point counts differ: " + std::to_string(a.points()) + " vs " +
                              std::to_string(b.points()));
    if (a.labels() != b.labels()) throw MismatchedModel("label sets differ");

    EditDistanceReport rep;
    rep.max = Rational(0);
    for (const auto& label : a.labels()) {
        const Perm& pa = a.permutation(label);
        const Perm& pb = b.permutation(label);
        std::int64_t diff = 0;
        for (std::size_t i = 0; i < pa.size(); ++i)
            if (pa[i] != pb[i]) ++diff;
        Rational d(diff, static_cast<std::int64_t>(a.points()));
        rep.perLabel[label] = d;
        rep.max = std::max(rep.max, d);
    }
    return rep;
}

SoficApprox conjugacy_embed(const SoficApprox& a, const EmbeddingSpec& spec) {
    if (spec.injection.size() != a.points())
        throw InvalidInput("injection must be defined on every point");
    if (spec.targetSize < a.points())
        throw InvalidInput("embedding target smaller than source");
    std::vector<bool> hit(spec.targetSize, false);
    for (auto u : spec.injection) {
        if (u >= spec.targetSize) throw NotInjective("injection image out of range");
        if (hit[u]) throw NotInjective("injection repeats image " + std::to_string(u));
        hit[u] = true;
    }

    SoficApprox out(spec.targetSize);
    for (const auto& label : a.labels()) {
        const Perm& p = a.permutation(label);
        Perm pushed = identity_perm(spec.targetSize);
        for (std::size_t v = 0; v < a.points(); ++v)
            pushed[spec.injection[v]] = spec.injection[p[v]];
        out.assign(label, std::move(pushed));
    }
    for (const auto& w : a.relators()) out.add_relator(w);
    return out;
}

PerfectnessResult perfectness_check(const SoficApprox& a) {
    PerfectnessResult res;
    if (a.relators().empty()) {
        res.perfect = true;
        res.vacuous = true;
        return res;
    }
    res.perfect = true;
    for (const auto& w : a.relators())
        if (!is_identity(a.evaluate_word(w))) res.perfect = false;
    return res;
}

SoficFile sofic_from_stream(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    if (!std::getline(in, line)) throw IoError("missing point-count header");
    try {
        n = std::stoul(line);
    } catch (const std::exception&) {
        throw IoError("point-count header must be an integer, got: " + line);
    }

    SoficFile file{SoficApprox(n), {}};
    int section = 0;  // 0 = assignments, 1 = relators, 2 = freeness
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line == "relators:") { section = 1; continue; }
        if (line == "freeness:") { section = 2; continue; }
        if (section == 0) {
            auto colon = line.find(':');
            if (colon == std::string::npos) throw IoError("expected 'label: images' line: " + line);
            std::string label = line.substr(0, colon);
            std::istringstream imgs(line.substr(colon + 1));
            Perm p;
            std::uint32_t v;
            while (imgs >> v) p.push_back(v);
            file.model.assign(label, std::move(p));
        } else if (section == 1) {
            file.model.add_relator(word_from_string(line));
        } else {
            file.freenessWords.push_back(word_from_string(line));
        }
    }
    return file;
}

std::string sofic_to_text(const SoficApprox& a, const std::vector<Word>& freenessWords) {
    std::ostringstream out;
    out << a.points() << '\n';
    for (const auto& label : a.labels()) {
        out << label << ':';
        for (auto v : a.permutation(label)) out << ' ' << v;
        out << '\n';
    }
    if (!a.relators().empty()) {
        out << "relators:\n";
        for (const auto& w : a.relators()) out << word_to_string(w) << '\n';
    }
    if (!freenessWords.empty()) {
        out << "freeness:\n";
        for (const auto& w : freenessWords) out << word_to_string(w) << '\n';
    }
    return out.str();
}

}
