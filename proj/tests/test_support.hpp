#pragma once

// Test-only oracles, all deliberately written as the most literal
// possible implementations, independent of the library's production
// paths.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "relmatch/classify.hpp"
#include "relmatch/relation.hpp"

namespace oracle {

using relmatch::DeltaMatrix;
using relmatch::OperatorKind;
using relmatch::SymbolId;

// Literal left-fold of the operator, same convention as the engines.
inline std::int64_t fold(OperatorKind op,
                         const std::vector<std::int64_t>& values) {
    std::int64_t acc = values.at(0);
    for (std::size_t j = 1; j < values.size(); ++j) {
        const std::int64_t v = values[j];
        switch (op) {
            case OperatorKind::True: acc = 1; break;
            case OperatorKind::False: acc = 0; break;
            case OperatorKind::Left: break;
            case OperatorKind::Right: acc = v; break;
            case OperatorKind::And: acc = (acc && v) ? 1 : 0; break;
            case OperatorKind::Or: acc = (acc || v) ? 1 : 0; break;
            case OperatorKind::Eq: acc = acc == v ? 1 : 0; break;
            case OperatorKind::Neq: acc = acc != v ? 1 : 0; break;
            case OperatorKind::Sum: acc += v; break;
            case OperatorKind::Max: acc = std::max(acc, v); break;
        }
    }
    return acc;
}

// Window distance from scratch.
inline std::int64_t window_distance(const DeltaMatrix& m, OperatorKind op,
                                    const std::vector<SymbolId>& pattern,
                                    const std::vector<SymbolId>& window) {
    std::vector<std::int64_t> values;
    for (std::size_t j = 0; j < pattern.size(); ++j)
        values.push_back(m.at(pattern[j], window[j]));
    return fold(op, values);
}

// All length-n strings over an alphabet of the given size.
inline std::vector<std::vector<SymbolId>> all_strings(std::size_t alphabet,
                                                      std::size_t n) {
    std::vector<std::vector<SymbolId>> out;
    std::vector<SymbolId> cur(n, 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < n && ++cur[i] == alphabet) cur[i++] = 0;
        if (i == n) break;
    }
    return out;
}

// Exhaustive independence search: does some pattern (up to max_len)
// make the output depend on both the pattern and the text? Pattern
// independence = all rows of symbols occurring in P identical; text
// independence = the output is the same for every window.
inline bool valid_by_search(const DeltaMatrix& m, OperatorKind op,
                            std::size_t max_len = 3) {
    for (std::size_t len = 1; len <= max_len; ++len) {
        for (const auto& pattern : all_strings(m.rows(), len)) {
            bool pattern_independent = true;
            for (SymbolId s : pattern)
                if (m.row(s) != m.row(pattern[0])) pattern_independent = false;
            if (pattern_independent) continue;
            std::optional<std::int64_t> first;
            bool constant = true;
            for (const auto& window : all_strings(m.cols(), len)) {
                const std::int64_t d = window_distance(m, op, pattern, window);
                if (!first) first = d;
                else if (*first != d) constant = false;
            }
            if (!constant) return true;
        }
    }
    return false;
}

// Quadratic-in-everything wildcard scan: every row pair x column pair,
// checked against the three-ones characterization.
inline bool wildcard_by_scan(const DeltaMatrix& m) {
    for (SymbolId r1 = 0; r1 < m.rows(); ++r1)
        for (SymbolId r2 = 0; r2 < m.rows(); ++r2) {
            if (r1 == r2) continue;
            for (SymbolId c1 = 0; c1 < m.cols(); ++c1)
                for (SymbolId c2 = 0; c2 < m.cols(); ++c2) {
                    if (c1 == c2) continue;
                    const auto sum = m.at(r1, c1) + m.at(r1, c2) +
                                     m.at(r2, c1) + m.at(r2, c2);
                    if (sum == 3) return true;
                }
        }
    return false;
}

// Naive sliding-window exact matcher: end positions of occurrences.
inline std::vector<std::size_t> naive_matches(
    const std::vector<std::uint64_t>& pattern,
    const std::vector<std::uint64_t>& text) {
    std::vector<std::size_t> out;
    if (text.size() < pattern.size()) return out;
    for (std::size_t end = pattern.size() - 1; end < text.size(); ++end) {
        const std::size_t start = end + 1 - pattern.size();
        if (std::equal(pattern.begin(), pattern.end(), text.begin() + start))
            out.push_back(end);
    }
    return out;
}

// Full-matrix Levenshtein distance.
inline std::int64_t edit_distance_matrix(const std::vector<std::int64_t>& a,
                                         const std::vector<std::int64_t>& b) {
    std::vector<std::vector<std::int64_t>> d(
        a.size() + 1, std::vector<std::int64_t>(b.size() + 1, 0));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                                d[i - 1][j - 1] +
                                    (a[i - 1] == b[j - 1] ? 0 : 1)});
    return d[a.size()][b.size()];
}

// Swap-match by enumeration: subsets of swap positions with no two
// adjacent, applied to the pattern.
inline bool swap_match_by_enumeration(const std::vector<std::int64_t>& p,
                                      const std::vector<std::int64_t>& w) {
    if (p.size() != w.size()) return false;
    const std::size_t k = p.size();
    const std::size_t masks = k >= 1 ? (std::size_t{1} << (k - 1)) : 1;
    for (std::size_t mask = 0; mask < masks; ++mask) {
        if (mask & (mask << 1)) continue; // adjacent swaps overlap
        std::vector<std::int64_t> s = p;
        for (std::size_t i = 0; i + 1 < k; ++i)
            if (mask & (std::size_t{1} << i)) std::swap(s[i], s[i + 1]);
        if (s == w) return true;
    }
    return false;
}

inline std::vector<int> random_bits(std::mt19937_64& rng, std::size_t n) {
    std::vector<int> out(n);
    for (auto& b : out) b = static_cast<int>(rng() % 2);
    return out;
}

} // namespace oracle
