#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "relmatch/bits.hpp"
#include "relmatch/relation.hpp"

namespace relmatch {

/// How per-position scores are produced: either a table over
/// (pattern alphabet x text alphabet) or a formula over integer-valued
/// symbol codes. The formula flavour exists for the value distances
/// (Hamming, L1, L2, L-infinity, cross-correlation) on alphabets too
/// large to tabulate.
enum class Metric : std::uint8_t {
    NotEqual = 0,    // [p != t]           (Hamming)
    AbsDiff = 1,     // |p - t|            (L1 with SUM, L-infinity with MAX)
    SquaredDiff = 2, // (p - t)^2          (L2)
    Product = 3,     // p * t              (cross-correlation)
};

class Relation {
public:
    static Relation from_matrix(DeltaMatrix matrix);
    /// symbol_bits/code_offset fix the canonical serialization of
    /// window symbols: a code c is stored as (c + code_offset) in
    /// symbol_bits bits.
    static Relation from_metric(Metric metric, unsigned symbol_bits,
                                std::int64_t code_offset = 0);

    std::int64_t delta(std::int64_t pattern_code, std::int64_t text_code) const;
    bool boolean_valued() const;
    bool is_matrix() const { return matrix_ != nullptr; }
    const DeltaMatrix& matrix() const;

    unsigned pattern_bits() const;
    unsigned text_bits() const;
    std::int64_t code_offset() const { return code_offset_; }

private:
    std::shared_ptr<const DeltaMatrix> matrix_;
    Metric metric_ = Metric::NotEqual;
    unsigned symbol_bits_ = 1;
    std::int64_t code_offset_ = 0;
};

/// A streaming window engine. Symbols arrive one at a time as integer
/// codes (alphabet ids for matrix relations, raw values for metric
/// relations); once m characters have been consumed, every push yields
/// the window distance at the new position. The persistent
/// between-character state serializes to a canonical bit string: that
/// serialization is what protocols send and what the space meter
/// measures, and importing it into a compatible shell resumes the
/// stream exactly.
class Engine {
public:
    virtual ~Engine() = default;

    virtual std::optional<std::int64_t> push(std::int64_t code) = 0;
    /// The output at the current position, if defined.
    virtual std::optional<std::int64_t> current() const = 0;
    virtual std::uint64_t pattern_length() const = 0;

    virtual BitString export_state() const = 0;
    virtual void import_state(const BitString& bits) = 0;
    virtual std::string engine_id() const = 0;
};

} // namespace relmatch
