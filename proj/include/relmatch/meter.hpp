#pragma once

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "relmatch/engine.hpp"

namespace relmatch {

/// One steady-state measurement: the exact bit length of the canonical
/// state serialization after the engine has consumed at least 2m
/// characters of a seeded random stream.
struct SpaceSample {
    std::string engine_id;
    std::uint64_t m = 0;
    std::uint64_t state_bits = 0;
};

/// A measurable engine family: how to build an instance for a pattern
/// length, and how to draw stream symbols for it.
struct MeterEntry {
    std::function<std::unique_ptr<Engine>(std::uint64_t m, std::mt19937_64&)>
        make;
    std::function<std::int64_t(std::mt19937_64&)> next_symbol;
};

/// Built-in engine families, keyed by the ids the CLI accepts:
/// naive-hamming, naive-l1, naive-l2, naive-crosscorr, naive-linf,
/// naive-and, naive-or, naive-eq, naive-left, conjunction, edit, swap.
const std::vector<std::string>& meter_engine_ids();
const MeterEntry& meter_entry(const std::string& engine_id);

/// One sample per pattern length: build the engine with a seeded random
/// pattern, stream 3m random characters, export, record the bit length.
std::vector<SpaceSample> measure(const std::string& engine_id,
                                 const std::vector<std::uint64_t>& ms,
                                 std::uint64_t seed);

struct GrowthFit {
    double slope = 0;     // least-squares slope of log(bits) vs log(m)
    double intercept = 0; // in natural-log coordinates
    double r2 = 0;
};

/// Least-squares fit over (log m, log state_bits). Requires at least
/// four samples with four distinct pattern lengths.
GrowthFit fit_growth(const std::vector<SpaceSample>& samples);

/// CSV rows: header "engine_id,m,state_bits" then one line per sample.
std::string samples_to_csv(const std::vector<SpaceSample>& samples);

} // namespace relmatch
