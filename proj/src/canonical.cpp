#include "relmatch/canonical.hpp"

#include <algorithm>

#include "relmatch/classify.hpp"

namespace relmatch {

CanonicalMap CanonicalMap::build(const DeltaMatrix& matrix) {
    auto [wild, _] = contains_wildcard_submatrix(matrix);
    if (wild)
        throw RelationError("canonical maps exist only for matrices without "
                            "the wildcard submatrix");
    CanonicalMap m;
    m.matrix_ = matrix;

    auto build_side = [](std::size_t n, auto line) {
        std::vector<std::optional<SymbolId>> map(n);
        std::vector<std::vector<std::int64_t>> lines;
        lines.reserve(n);
        for (SymbolId i = 0; i < n; ++i) lines.push_back(line(i));
        for (SymbolId i = 0; i < n; ++i) {
            if (std::all_of(lines[i].begin(), lines[i].end(),
                            [](auto v) { return v == 0; })) {
                map[i] = std::nullopt; // dead
                continue;
            }
            for (SymbolId j = 0; j <= i; ++j) {
                if (lines[j] == lines[i]) {
                    map[i] = j;
                    break;
                }
            }
        }
        return map;
    };

    m.pattern_map_ = build_side(matrix.rows(),
                                [&](SymbolId r) { return matrix.row(r); });
    m.text_map_ =
        build_side(matrix.cols(), [&](SymbolId c) { return matrix.col(c); });

    for (SymbolId r = 0; r < matrix.rows(); ++r)
        if (m.pattern_map_[r] == r) m.pattern_reps_.push_back(r);
    for (SymbolId c = 0; c < matrix.cols(); ++c) {
        if (m.text_map_[c] == c) m.text_reps_.push_back(c);
        if (!m.text_map_[c]) m.has_dead_text_ = true;
    }

    // On the representatives the matrix is a permuted identity, so each
    // surviving row has exactly one partner column.
    m.partner_.assign(matrix.rows(), 0);
    for (SymbolId r : m.pattern_reps_) {
        std::optional<SymbolId> partner;
        for (SymbolId c : m.text_reps_) {
            if (matrix.at(r, c) == 1) {
                if (partner)
                    throw InternalError("canonical representative row has "
                                        "two ones");
                partner = c;
            }
        }
        if (!partner)
            throw InternalError("canonical representative row has no one");
        m.partner_[r] = *partner;
    }
    return m;
}

std::optional<SymbolId> CanonicalMap::pattern_target(SymbolId p) const {
    if (p >= pattern_map_.size())
        throw SymbolError("pattern symbol id out of range");
    return pattern_map_[p];
}

std::optional<SymbolId> CanonicalMap::text_target(SymbolId t) const {
    if (t >= text_map_.size())
        throw SymbolError("text symbol id out of range");
    return text_map_[t];
}

SymbolId CanonicalMap::partner_of(SymbolId pattern_rep) const {
    if (pattern_rep >= partner_.size() ||
        pattern_map_[pattern_rep] != pattern_rep)
        throw SymbolError("not a surviving pattern representative");
    return partner_[pattern_rep];
}

std::uint32_t CanonicalMap::text_code(SymbolId text_rep) const {
    auto it = std::find(text_reps_.begin(), text_reps_.end(), text_rep);
    if (it == text_reps_.end())
        throw SymbolError("not a surviving text representative");
    return static_cast<std::uint32_t>(it - text_reps_.begin());
}

CanonicalPattern canonicalize_pattern(const CanonicalMap& map,
                                      const Pattern& p) {
    Pattern out;
    out.ids.reserve(p.ids.size());
    for (SymbolId id : p.ids) {
        auto target = map.pattern_target(id);
        if (!target) return AlwaysZero{};
        out.ids.push_back(*target);
    }
    return out;
}

} // namespace relmatch
