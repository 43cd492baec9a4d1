#pragma once

#include <functional>
#include <vector>

#include "relmatch/bits.hpp"
#include "relmatch/engine.hpp"

namespace relmatch {

/// One-way protocol runs: Alice prepares an engine (pattern, possibly
/// some stream prefix), serializes it, and the serialized state is the
/// entire message. Bob rebuilds an engine shell from the shared
/// program (relation + operator), imports the message and streams his
/// own input. Nothing else crosses between the two sides.
struct ProtocolTranscript {
    std::string problem;   // EQUALITY | INDEXING | DISJOINTNESS
    std::string reduction; // which run_* produced this
    std::uint64_t m = 0;
    std::uint64_t message_bits = 0;
    std::int64_t answer = 0;
    std::int64_t expected = 0;
    bool correct = false;
};

struct TrialSummary {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double success_rate = 0;
    double ci95_low = 0;
    double ci95_high = 0;
    double message_bits_mean = 0;
    std::uint64_t message_bits_min = 0;
    std::uint64_t message_bits_max = 0;
};

/// h(x) = ((a*x + b) mod p) mod range with p = 2^61 - 1 and a != 0:
/// pairwise independent up to the (range/p) rounding defect, which is
/// negligible at any size this project runs.
struct HashSpec {
    std::uint64_t prime;
    std::uint64_t a;
    std::uint64_t b;
    std::uint64_t range;

    std::uint64_t apply(std::uint64_t x) const;
    static HashSpec pairwise(std::uint64_t range, std::uint64_t universe,
                             std::uint64_t seed);
};

/// Alice holds X over {a,b} (0 = a, 1 = b), Bob an index n. Alice
/// streams X into a SUM engine on the constant pattern; Bob appends n
/// copies of 'a', reads d, appends one more, reads d'; d == d' decides
/// X[n] = a. Exact engine, so the answer is always right.
ProtocolTranscript run_indexing_via_sum(const std::vector<int>& X,
                                        std::uint64_t n);

/// Same shape with the EQ (parity) operator instead of SUM.
ProtocolTranscript run_parity_indexing(const std::vector<int>& X,
                                       std::uint64_t n);

/// Alice holds X over {wildcard, x} (1 = wildcard); her X is the
/// pattern of an AND engine over the wildcard relation. Bob streams
/// 'a' everywhere except 'b' at position n; the output is 1 iff X[n]
/// is the wildcard.
ProtocolTranscript run_indexing_via_wildcard(const std::vector<int>& X,
                                             std::uint64_t n);

enum class EqualityEngine { Baseline, Sublinear };

/// Alice's X becomes the pattern, Bob's Y the text, both over the
/// exact-match relation; the single full-window AND output decides
/// X == Y. The sublinear engine makes the message polylogarithmic.
/// amplification > 1 runs that many independent protocols (odd count)
/// and majority-votes, summing the message bits.
ProtocolTranscript run_equality(const std::vector<int>& X,
                                const std::vector<int>& Y,
                                EqualityEngine engine, std::uint64_t seed,
                                unsigned amplification = 1);

/// The two halves of run_equality, split so tests can tamper with the
/// message in between.
BitString equality_alice_message(const std::vector<int>& X,
                                 EqualityEngine engine, std::uint64_t seed);
std::int64_t equality_bob_answer(const BitString& message,
                                 const std::vector<int>& Y,
                                 EqualityEngine engine);

/// Alice's X is the pattern of an edit-distance engine. Bob streams m
/// zeros (d = number of ones in X), then the indicator string of n
/// (d'); d' < d decides X[n] = 1.
ProtocolTranscript run_indexing_via_edit(const std::vector<int>& X,
                                         std::uint64_t n);

/// Sets A and B of equal size m from [0, universe). Alice scatters A
/// into a pattern of length c*m through a pairwise-independent hash
/// (last write wins, init symbol outside the universe); Bob does the
/// same for B into a text with a different init symbol and declares
/// the sets disjoint iff the Hamming output is c*m. The hash seed is
/// part of the message and its 64 bits are counted.
ProtocolTranscript run_disjointness(const std::vector<std::uint64_t>& A,
                                    const std::vector<std::uint64_t>& B,
                                    std::uint64_t c, std::uint64_t universe,
                                    std::uint64_t seed);

/// Deterministic per-trial seed derivation.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

/// Repeat a seeded protocol; success rate with a normal-approximation
/// 95% confidence interval and message size statistics.
TrialSummary run_trials(
    const std::function<ProtocolTranscript(std::uint64_t)>& one_trial,
    std::uint64_t trials, std::uint64_t seed);

} // namespace relmatch
