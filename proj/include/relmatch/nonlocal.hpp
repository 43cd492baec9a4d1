#pragma once

#include <string>
#include <vector>

#include "relmatch/engine.hpp"

namespace relmatch {

/// Streaming Levenshtein distance between the pattern and the window
/// of the last m characters (insert, delete, replace; equal window and
/// pattern lengths make insertions and deletions pair up). The full DP
/// runs per position over a transient one-row workspace; persistent
/// state is the window and pattern, O(m) symbols. No sublinear variant
/// exists to build: the problem needs linear state.
class EditEngine : public Engine {
public:
    explicit EditEngine(std::vector<std::int64_t> pattern_codes,
                        unsigned symbol_bits = 1);
    explicit EditEngine(unsigned symbol_bits = 1); // import shell

    std::optional<std::int64_t> push(std::int64_t code) override;
    std::optional<std::int64_t> current() const override;
    std::uint64_t pattern_length() const override { return pattern_.size(); }

    BitString export_state() const override;
    void import_state(const BitString& bits) override;
    std::string engine_id() const override { return "edit"; }

private:
    std::int64_t distance() const;

    unsigned symbol_bits_;
    std::vector<std::int64_t> pattern_;
    std::vector<std::int64_t> window_;
    std::uint64_t head_ = 0;
    std::uint64_t warm_ = 0;
};

/// Streaming swap matching: MATCH iff the pattern can be turned into
/// the window by disjoint adjacent transpositions (each position
/// swapped at most once). Checked per window by a greedy left-to-right
/// scan: take P[j]==W[j], else require the crossed pair
/// P[j]==W[j+1] && P[j+1]==W[j] and consume both. The greedy scan is
/// forced at every position, so it finds a swap set exactly when one
/// exists (the test suite re-checks this against enumeration of all
/// swap sets).
class SwapEngine : public Engine {
public:
    explicit SwapEngine(std::vector<std::int64_t> pattern_codes,
                        unsigned symbol_bits = 1);
    explicit SwapEngine(unsigned symbol_bits = 1); // import shell

    std::optional<std::int64_t> push(std::int64_t code) override;
    std::optional<std::int64_t> current() const override;
    std::uint64_t pattern_length() const override { return pattern_.size(); }

    BitString export_state() const override;
    void import_state(const BitString& bits) override;
    std::string engine_id() const override { return "swap"; }

    /// Window positions where the last emitted match used a swap
    /// (position j means W[j] and W[j+1] were crossed). Empty unless
    /// the last output was a match.
    const std::vector<std::uint64_t>& last_swap_positions() const {
        return last_swaps_;
    }

private:
    bool matches() const;

    unsigned symbol_bits_;
    std::vector<std::int64_t> pattern_;
    std::vector<std::int64_t> window_;
    std::uint64_t head_ = 0;
    std::uint64_t warm_ = 0;
    mutable std::vector<std::uint64_t> last_swaps_;
};

/// 5-bit block codes for the four-symbol alphabet that ties conjunction
/// matching under the wildcard relation to swap matching. Pattern side:
/// '*' -> 00100, 'x' -> 00010. Text side: 'a' -> 00010, 'b' -> 01000.
/// Every possible swap between an encoded pattern and an encoded text
/// stays inside one block.
std::vector<std::int64_t> swap_encode_pattern(const std::string& pattern);
std::vector<std::int64_t> swap_encode_text_symbol(char symbol);

} // namespace relmatch
