#include "relmatch/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "relmatch/engines.hpp"
#include "relmatch/field.hpp"
#include "relmatch/gallery.hpp"
#include "relmatch/nonlocal.hpp"

namespace relmatch {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 over seed + golden-ratio strides.
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t HashSpec::apply(std::uint64_t x) const {
    return field::add(field::mul(a, x % prime), b) % range;
}

HashSpec HashSpec::pairwise(std::uint64_t range, std::uint64_t universe,
                            std::uint64_t seed) {
    if (range == 0) throw RelationError("hash range must be positive");
    if (universe >= field::kPrime)
        throw RelationError("universe must be smaller than the hash prime");
    std::mt19937_64 rng(seed);
    HashSpec h;
    h.prime = field::kPrime;
    h.a = 1 + rng() % (field::kPrime - 1);
    h.b = rng() % field::kPrime;
    h.range = range;
    return h;
}

namespace {

void check_bits(const std::vector<int>& X, const char* who) {
    if (X.empty()) throw RelationError(std::string(who) + " must be non-empty");
    for (int v : X)
        if (v != 0 && v != 1)
            throw RelationError(std::string(who) + " must be over {0,1}");
}

ProtocolTranscript make_transcript(std::string problem, std::string reduction,
                                   std::uint64_t m, std::uint64_t bits,
                                   std::int64_t answer, std::int64_t expected) {
    ProtocolTranscript t;
    t.problem = std::move(problem);
    t.reduction = std::move(reduction);
    t.m = m;
    t.message_bits = bits;
    t.answer = answer;
    t.expected = expected;
    t.correct = answer == expected;
    return t;
}

// Shared shape of the SUM/EQ indexing protocols: stream X, hand over,
// probe with n then n+1 copies of 'a'.
ProtocolTranscript run_probe_indexing(const std::vector<int>& X,
                                      std::uint64_t n, OperatorKind op,
                                      const char* reduction) {
    check_bits(X, "Alice's string");
    const std::uint64_t m = X.size();
    if (n >= m) throw RelationError("index out of range");

    BitString message;
    {
        // Alice: constant pattern x^m, then her whole string.
        RingEngine alice(Relation::from_matrix(gallery::indexing_relation()),
                         op, std::vector<std::int64_t>(m, 0));
        for (int v : X) alice.push(v);
        message = alice.export_state();
    }
    RingEngine bob(Relation::from_matrix(gallery::indexing_relation()), op);
    bob.import_state(message);
    for (std::uint64_t i = 0; i < n; ++i) bob.push(0);
    const std::int64_t d = *bob.current();
    bob.push(0);
    const std::int64_t d_prime = *bob.current();
    const std::int64_t answer = d == d_prime ? 0 : 1;
    return make_transcript("INDEXING", reduction, m, message.size_bits(),
                           answer, X[n]);
}

} // namespace

ProtocolTranscript run_indexing_via_sum(const std::vector<int>& X,
                                        std::uint64_t n) {
    return run_probe_indexing(X, n, OperatorKind::Sum, "indexing-sum");
}

ProtocolTranscript run_parity_indexing(const std::vector<int>& X,
                                       std::uint64_t n) {
    return run_probe_indexing(X, n, OperatorKind::Eq, "parity-indexing");
}

ProtocolTranscript run_indexing_via_wildcard(const std::vector<int>& X,
                                             std::uint64_t n) {
    check_bits(X, "Alice's string");
    const std::uint64_t m = X.size();
    if (n >= m) throw RelationError("index out of range");

    BitString message;
    {
        // Pattern symbol 0 is the wildcard row, 1 the exact row.
        std::vector<std::int64_t> pattern(m);
        for (std::uint64_t i = 0; i < m; ++i) pattern[i] = X[i] ? 0 : 1;
        RingEngine alice(Relation::from_matrix(gallery::wildcard_relation()),
                         OperatorKind::And, std::move(pattern));
        message = alice.export_state();
    }
    RingEngine bob(Relation::from_matrix(gallery::wildcard_relation()),
                   OperatorKind::And);
    bob.import_state(message);
    std::optional<std::int64_t> out;
    for (std::uint64_t i = 0; i < m; ++i) out = bob.push(i == n ? 1 : 0);
    return make_transcript("INDEXING", "indexing-wildcard", m,
                           message.size_bits(), *out, X[n]);
}

BitString equality_alice_message(const std::vector<int>& X,
                                 EqualityEngine engine, std::uint64_t seed) {
    check_bits(X, "Alice's string");
    std::vector<std::int64_t> pattern(X.begin(), X.end());
    if (engine == EqualityEngine::Baseline) {
        RingEngine alice(Relation::from_matrix(gallery::exact_match_relation()),
                         OperatorKind::And, std::move(pattern));
        return alice.export_state();
    }
    Pattern p;
    for (int v : X) p.ids.push_back(static_cast<SymbolId>(v));
    ConjunctionEngine alice(gallery::exact_match_relation(), p, seed);
    return alice.export_state();
}

std::int64_t equality_bob_answer(const BitString& message,
                                 const std::vector<int>& Y,
                                 EqualityEngine engine) {
    check_bits(Y, "Bob's string");
    std::optional<std::int64_t> out;
    if (engine == EqualityEngine::Baseline) {
        RingEngine bob(Relation::from_matrix(gallery::exact_match_relation()),
                       OperatorKind::And);
        bob.import_state(message);
        for (int v : Y) out = bob.push(v);
    } else {
        ConjunctionEngine bob(gallery::exact_match_relation());
        bob.import_state(message);
        for (int v : Y) out = bob.push(v);
    }
    return *out;
}

ProtocolTranscript run_equality(const std::vector<int>& X,
                                const std::vector<int>& Y,
                                EqualityEngine engine, std::uint64_t seed,
                                unsigned amplification) {
    if (X.size() != Y.size())
        throw RelationError("equality inputs must have the same length");
    if (amplification == 0 || amplification % 2 == 0)
        throw RelationError("amplification must be an odd repeat count");
    std::uint64_t bits = 0;
    unsigned votes = 0;
    for (unsigned i = 0; i < amplification; ++i) {
        const BitString message =
            equality_alice_message(X, engine, split_seed(seed, i));
        bits += message.size_bits();
        votes += equality_bob_answer(message, Y, engine) != 0 ? 1 : 0;
    }
    const std::int64_t answer = votes > amplification / 2 ? 1 : 0;
    const std::int64_t expected = X == Y ? 1 : 0;
    return make_transcript("EQUALITY", "equality", X.size(), bits, answer,
                           expected);
}

ProtocolTranscript run_indexing_via_edit(const std::vector<int>& X,
                                         std::uint64_t n) {
    check_bits(X, "Alice's string");
    const std::uint64_t m = X.size();
    if (n >= m) throw RelationError("index out of range");

    BitString message;
    {
        EditEngine alice(std::vector<std::int64_t>(X.begin(), X.end()));
        message = alice.export_state();
    }
    EditEngine bob;
    bob.import_state(message);
    for (std::uint64_t i = 0; i < m; ++i) bob.push(0);
    const std::int64_t d = *bob.current(); // the number of ones in X
    for (std::uint64_t i = 0; i < m; ++i) bob.push(i == n ? 1 : 0);
    const std::int64_t d_prime = *bob.current();
    const std::int64_t answer = d_prime < d ? 1 : 0;
    return make_transcript("INDEXING", "indexing-edit", m, message.size_bits(),
                           answer, X[n]);
}

ProtocolTranscript run_disjointness(const std::vector<std::uint64_t>& A,
                                    const std::vector<std::uint64_t>& B,
                                    std::uint64_t c, std::uint64_t universe,
                                    std::uint64_t seed) {
    if (A.empty() || A.size() != B.size())
        throw RelationError("disjointness needs two non-empty equal-size sets");
    if (c < 2) throw RelationError("the hash range constant c must be > 1");
    const std::uint64_t m = A.size();
    const std::uint64_t cm = c * m;
    if (universe < cm)
        throw RelationError("universe must be at least c*m");
    auto check_set = [universe](const std::vector<std::uint64_t>& s,
                                const char* who) {
        std::set<std::uint64_t> seen;
        for (std::uint64_t x : s) {
            if (x >= universe)
                throw RelationError(std::string(who) +
                                    " contains an element outside the universe");
            if (!seen.insert(x).second)
                throw RelationError(std::string(who) + " is not a set");
        }
    };
    check_set(A, "Alice's set");
    check_set(B, "Bob's set");

    const HashSpec h = HashSpec::pairwise(cm, universe, seed);
    // Codes: -1 and -2 are the two init symbols outside the universe;
    // serialized with offset 2 so everything is non-negative.
    const Relation rel = Relation::from_metric(
        Metric::NotEqual, bit_width_for(universe + 2), 2);

    BitString message;
    {
        std::vector<std::int64_t> pattern(cm, -1);
        for (std::uint64_t x : A)
            pattern[h.apply(x)] = static_cast<std::int64_t>(x);
        RingEngine alice(rel, OperatorKind::Sum, std::move(pattern));
        message = alice.export_state();
    }
    RingEngine bob(rel, OperatorKind::Sum);
    bob.import_state(message);
    std::vector<std::int64_t> text(cm, -2);
    for (std::uint64_t y : B) text[h.apply(y)] = static_cast<std::int64_t>(y);
    std::optional<std::int64_t> out;
    for (std::int64_t t : text) out = bob.push(t);

    const std::int64_t answer = *out == static_cast<std::int64_t>(cm) ? 1 : 0;
    std::set<std::uint64_t> a_set(A.begin(), A.end());
    const bool disjoint = std::none_of(B.begin(), B.end(), [&](std::uint64_t y) {
        return a_set.count(y) != 0;
    });
    // The shared hash seed rides along with the state; by the
    // private-coins accounting its 64 bits belong to the message.
    return make_transcript("DISJOINTNESS", "disjointness", m,
                           message.size_bits() + 64, answer, disjoint ? 1 : 0);
}

TrialSummary run_trials(
    const std::function<ProtocolTranscript(std::uint64_t)>& one_trial,
    std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw RelationError("trial count must be positive");
    TrialSummary s;
    s.trials = trials;
    s.message_bits_min = ~std::uint64_t{0};
    double bits_total = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const ProtocolTranscript t = one_trial(split_seed(seed, i));
        if (t.correct) ++s.successes;
        bits_total += static_cast<double>(t.message_bits);
        s.message_bits_min = std::min(s.message_bits_min, t.message_bits);
        s.message_bits_max = std::max(s.message_bits_max, t.message_bits);
    }
    s.success_rate = static_cast<double>(s.successes) /
                     static_cast<double>(trials);
    s.message_bits_mean = bits_total / static_cast<double>(trials);
    const double half = 1.959963985 *
                        std::sqrt(s.success_rate * (1.0 - s.success_rate) /
                                  static_cast<double>(trials));
    s.ci95_low = std::max(0.0, s.success_rate - half);
    s.ci95_high = std::min(1.0, s.success_rate + half);
    return s;
}

} // namespace relmatch
