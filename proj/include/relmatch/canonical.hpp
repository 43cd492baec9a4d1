#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "relmatch/relation.hpp"

namespace relmatch {

/// Smallest-equivalent-symbol maps for both alphabets of a Boolean
/// matrix without the wildcard submatrix.
///
/// Two pattern symbols are equivalent when their rows are identical;
/// each symbol maps to the enumeration-earliest member of its
/// equivalence class. Symbols with an all-zero row (or column, on the
/// text side) map to a dead marker instead: a pattern containing one
/// can never match, and a window containing a dead text symbol always
/// scores zero. Restricted to the surviving representatives, the
/// matrix is a permuted identity, so conjunction matching becomes
/// exact matching.
class CanonicalMap {
public:
    static CanonicalMap build(const DeltaMatrix& matrix);

    /// nullopt = dead symbol (all-zero row/column).
    std::optional<SymbolId> pattern_target(SymbolId p) const;
    std::optional<SymbolId> text_target(SymbolId t) const;

    /// Representatives that map to themselves and are not dead, in
    /// enumeration order.
    const std::vector<SymbolId>& pattern_representatives() const {
        return pattern_reps_;
    }
    const std::vector<SymbolId>& text_representatives() const {
        return text_reps_;
    }

    /// For a surviving pattern representative, the unique text
    /// representative with a 1 entry (the identity structure partner).
    SymbolId partner_of(SymbolId pattern_rep) const;

    /// Index of a surviving text representative in the reduced text
    /// alphabet (the common code space used for exact matching).
    std::uint32_t text_code(SymbolId text_rep) const;

    /// Number of codes = number of surviving text representatives.
    std::uint32_t code_count() const {
        return static_cast<std::uint32_t>(text_reps_.size());
    }

    /// Whether any text symbol has an all-zero column.
    bool has_dead_text() const { return has_dead_text_; }

    const DeltaMatrix& matrix() const { return matrix_; }

private:
    DeltaMatrix matrix_;
    std::vector<std::optional<SymbolId>> pattern_map_;
    std::vector<std::optional<SymbolId>> text_map_;
    std::vector<SymbolId> pattern_reps_;
    std::vector<SymbolId> text_reps_;
    std::vector<SymbolId> partner_; // pattern rep id -> text rep id
    bool has_dead_text_ = false;
};

/// Marker result for patterns containing a dead symbol: the output is
/// identically zero regardless of the text.
struct AlwaysZero {};

using CanonicalPattern = std::variant<Pattern, AlwaysZero>;

/// Rewrite a pattern symbol-wise onto the representatives.
CanonicalPattern canonicalize_pattern(const CanonicalMap& map, const Pattern& p);

} // namespace relmatch
