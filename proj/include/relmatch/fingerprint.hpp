#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relmatch/bits.hpp"

namespace relmatch {

/// Tuning for the streaming exact matcher.
struct FingerprintConfig {
    /// Seed for the fingerprint base (one base per matcher instance).
    std::uint64_t seed = 1;
    /// Prefix lengths up to this bound are matched by direct comparison
    /// against a retained copy of the pattern head, held in a ring of
    /// recent characters; only longer prefixes get fingerprint levels.
    /// Must be a power of two. Small values exist for tests that want
    /// to exercise the level machinery on tiny patterns.
    std::uint64_t ring_cap = 64;
    /// Bits per symbol in the canonical state serialization.
    unsigned symbol_bits = 1;
};

/// Documented constant for the state-size envelope: exported state of a
/// matcher with the default configuration stays below
/// kStateBitsConstant * (log2 m)^2 bits for every m >= 2 (binary
/// symbols). Checked by the test suite.
inline constexpr std::uint64_t kStateBitsConstant = 32;

/// Sliding-window exact matching against a fixed pattern with
/// persistent state polylogarithmic in the pattern length.
///
/// Occurrences of pattern prefixes are tracked level by level, each
/// level doubling the prefix length. A level keeps its candidate
/// occurrence starts compressed as one arithmetic progression: starts
/// of the same prefix within a window of its own length are
/// periodicity-constrained to equal spacing, so a position, a step and
/// a count suffice. Candidates are promoted to the next level (or
/// reported as matches at full length) by comparing a rolling
/// polynomial fingerprint of the text against precomputed pattern
/// prefix fingerprints over the 2^61 - 1 field.
///
/// Guarantees: a true occurrence is never missed; a reported match is
/// wrong only if two distinct equal-length strings collide under the
/// fingerprint, which happens per position with probability at most
/// m^2 / (2^61 - 1). If a collision breaks the equal-spacing invariant
/// the matcher throws InternalError rather than continue silently.
///
/// Patterns no longer than ring_cap are matched by direct comparison
/// (exact, zero error); the level machinery engages above it.
class FingerprintMatcher {
public:
    FingerprintMatcher(const std::vector<std::uint64_t>& pattern_codes,
                       const FingerprintConfig& config);

    /// Shell for importing a serialized state.
    explicit FingerprintMatcher(const FingerprintConfig& config);

    /// Consume one symbol; true iff the last m characters equal the
    /// pattern (at this position).
    bool push(std::uint64_t code);

    bool last_match() const { return last_match_; }
    std::uint64_t pattern_length() const { return m_; }
    std::uint64_t chars_consumed() const { return n_; }

    /// Conceptual level table: all power-of-two prefix lengths below m,
    /// plus m itself.
    std::vector<std::uint64_t> level_lengths() const;
    /// Fingerprint of the pattern prefix of one of those lengths.
    std::uint64_t level_fingerprint(std::uint64_t len) const;

    BitString export_state() const;
    void import_state(const BitString& bits);

private:
    struct Level {
        std::uint64_t len = 0;      // tracked prefix length
        std::uint64_t next_len = 0; // promotion target length
        std::uint64_t fp = 0;       // fingerprint of pattern[0..len)
        std::uint64_t period = 0;   // minimal period of pattern[0..len)
        std::uint64_t fp_period = 0; // fingerprint of pattern[0..period)
        bool periodic = false;       // period < len
        // Live candidates: arithmetic progression, oldest first.
        std::uint64_t count = 0;
        std::uint64_t first = 0; // text start of the oldest candidate
        std::uint64_t step = 0;  // spacing, meaningful for count >= 2
        std::uint64_t phi_a = 0; // text prefix fp at first
        std::uint64_t phi_b = 0; // text prefix fp at the second candidate
    };

    void preprocess(const std::vector<std::uint64_t>& pattern_codes);
    void push_ring(std::uint64_t code);
    bool ring_suffix_equals(const std::vector<std::uint64_t>& prefix) const;
    void insert_candidate(Level& level, std::uint64_t s, std::uint64_t phi_s);
    std::pair<std::uint64_t, std::uint64_t> pop_candidate(Level& level);
    bool verify_and_promote(std::size_t level_index);
    std::uint64_t ring_len() const;

    FingerprintConfig config_;
    std::uint64_t m_ = 0;
    bool small_mode_ = true;
    std::uint64_t base_ = 0;   // fingerprint base r
    std::uint64_t n_ = 0;      // characters consumed
    std::uint64_t phi_ = 0;    // fingerprint of text[0..n)
    std::uint64_t rpow_n_ = 1; // cache: base^n, rebuilt on import
    bool last_match_ = false;

    // Retained pattern head (all of it in small mode) and the ring of
    // the most recent characters, both min(m, ring_cap) long.
    std::vector<std::uint64_t> pattern_head_;
    std::vector<std::uint64_t> ring_;
    std::uint64_t ring_head_ = 0;

    std::vector<Level> levels_; // leveled mode only
    std::uint64_t fp_full_ = 0; // fingerprint of the whole pattern
};

} // namespace relmatch
