#pragma once

#include <vector>

#include "relmatch/canonical.hpp"
#include "relmatch/classify.hpp"
#include "relmatch/engine.hpp"
#include "relmatch/fingerprint.hpp"

namespace relmatch {

/// Baseline engine for every operator: a ring buffer of the last m
/// symbols, with the window distance recomputed as a literal left-fold
/// on every push. O(m) state and O(m) work per character; this is the
/// reference implementation the sublinear paths are tested against.
///
/// Note the fold realigns against the pattern on every slide, so there
/// is no constant-time incremental update for SUM-like operators unless
/// the pattern is constant; the baseline recomputes instead of chasing
/// that special case.
class RingEngine : public Engine {
public:
    RingEngine(Relation relation, OperatorKind op,
               std::vector<std::int64_t> pattern_codes);
    /// Shell for importing a serialized state.
    RingEngine(Relation relation, OperatorKind op);

    std::optional<std::int64_t> push(std::int64_t code) override;
    std::optional<std::int64_t> current() const override;
    std::uint64_t pattern_length() const override { return pattern_.size(); }

    BitString export_state() const override;
    void import_state(const BitString& bits) override;
    std::string engine_id() const override;

private:
    std::int64_t fold() const;
    void validate_pattern() const;

    Relation relation_;
    OperatorKind op_;
    std::vector<std::int64_t> pattern_;
    std::vector<std::int64_t> window_;
    std::uint64_t head_ = 0;
    std::uint64_t warm_ = 0; // symbols consumed, saturating at m
};

/// Left-fold of the operator over per-position values; the semantics
/// every engine and oracle in the project shares.
std::int64_t operator_fold(OperatorKind op,
                           const std::vector<std::int64_t>& values);

/// The sublinear conjunction engine: canonical maps rewrite both sides
/// onto the reduced alphabets where the relation is a permuted
/// identity, a fingerprint matcher does exact matching in polylog
/// state, and a recent-dead-symbol age handles text symbols whose
/// column is all zero. Only relations without the wildcard submatrix
/// qualify; construction enforces that.
///
/// Persistent state: the matcher state plus the dead-symbol age —
/// polylogarithmic in m. The canonical maps are derived from the
/// relation alone (not the pattern), so they count as program, not
/// state, and are rebuilt by import shells.
class ConjunctionEngine : public Engine {
public:
    ConjunctionEngine(DeltaMatrix matrix, const Pattern& pattern,
                      std::uint64_t seed,
                      std::uint64_t ring_cap = FingerprintConfig{}.ring_cap);
    /// Shell for importing a serialized state.
    ConjunctionEngine(DeltaMatrix matrix,
                      std::uint64_t ring_cap = FingerprintConfig{}.ring_cap);

    /// Input: text alphabet symbol id.
    std::optional<std::int64_t> push(std::int64_t code) override;
    std::optional<std::int64_t> current() const override;
    std::uint64_t pattern_length() const override { return m_; }

    BitString export_state() const override;
    void import_state(const BitString& bits) override;
    std::string engine_id() const override { return "conjunction"; }

    const FingerprintMatcher* matcher() const { return matcher_.get(); }

private:
    FingerprintConfig matcher_config() const;
    std::optional<std::int64_t> output() const;

    CanonicalMap map_;
    std::uint64_t ring_cap_;
    std::uint64_t seed_ = 0;
    std::uint64_t m_ = 0;
    std::uint64_t count_ = 0;
    bool always_zero_ = false;
    // Age (in characters) of the most recent dead text symbol, if it is
    // still inside the window.
    std::optional<std::uint64_t> dead_age_;
    std::unique_ptr<FingerprintMatcher> matcher_;
};

} // namespace relmatch
