#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "relmatch/errors.hpp"

namespace relmatch {

using SymbolId = std::uint32_t;

/// An ordered alphabet of distinct opaque symbol tokens. The order is
/// total and stable; it defines which symbol is "smaller" wherever the
/// library breaks ties by enumeration order.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    std::size_t size() const { return symbols_.size(); }
    const std::string& token(SymbolId id) const;
    const std::vector<std::string>& tokens() const { return symbols_; }

    /// Index of a token, or SymbolError if unknown.
    SymbolId id(const std::string& token) const;
    std::optional<SymbolId> find(const std::string& token) const;

    /// Token parsed as a signed integer; SymbolError if not numeric.
    /// Used only by the value-based distances (L1, L2, L-infinity,
    /// cross-correlation).
    std::int64_t value(SymbolId id) const;

    bool operator==(const Alphabet&) const;

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, SymbolId> index_;
};

/// The per-position relation between pattern and text symbols, stored
/// as a dense |pattern alphabet| x |text alphabet| table of integers.
/// Boolean relations contain only {0,1}.
class DeltaMatrix {
public:
    DeltaMatrix() = default;
    DeltaMatrix(Alphabet pattern_alphabet, Alphabet text_alphabet,
                std::vector<std::vector<std::int64_t>> entries);

    const Alphabet& pattern_alphabet() const { return pattern_alphabet_; }
    const Alphabet& text_alphabet() const { return text_alphabet_; }

    std::size_t rows() const { return pattern_alphabet_.size(); }
    std::size_t cols() const { return text_alphabet_.size(); }

    std::int64_t at(SymbolId p, SymbolId t) const;
    std::int64_t at_tokens(const std::string& p, const std::string& t) const;

    /// Full row / column as value vectors (used by the classifier and
    /// the canonicalizer to compare symbols).
    std::vector<std::int64_t> row(SymbolId p) const;
    std::vector<std::int64_t> col(SymbolId t) const;

    bool is_boolean() const;

    /// Entry-wise 1-x of a Boolean matrix (for the OR/AND duality).
    DeltaMatrix negated() const;

    bool operator==(const DeltaMatrix&) const;

private:
    Alphabet pattern_alphabet_;
    Alphabet text_alphabet_;
    std::vector<std::int64_t> entries_; // row-major
};

/// A pattern over a pattern alphabet, held as symbol ids.
struct Pattern {
    std::vector<SymbolId> ids;

    std::size_t length() const { return ids.size(); }
};

/// Parse a pattern from tokens, validating membership in the alphabet.
Pattern make_pattern(const Alphabet& alphabet,
                     const std::vector<std::string>& tokens);

/// Matrix document format (canonical, used by the CLI and all tests):
///   {"pattern_alphabet": [...], "text_alphabet": [...],
///    "entries": [[...], ...]}
/// with symbols serialized as strings and entries as integers.
DeltaMatrix load_delta_matrix(const std::string& json_text);
std::string serialize_delta_matrix(const DeltaMatrix& m);

} // namespace relmatch
