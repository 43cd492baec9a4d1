#include <doctest.h>

#include <cmath>
#include <random>

#include "relmatch/fingerprint.hpp"
#include "relmatch/errors.hpp"
#include "test_support.hpp"

using namespace relmatch;

namespace {

std::vector<std::size_t> matcher_matches(FingerprintMatcher& m,
                                         const std::vector<std::uint64_t>& text) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < text.size(); ++i)
        if (m.push(text[i])) out.push_back(i);
    return out;
}

FingerprintConfig config_with(std::uint64_t ring_cap, unsigned bits = 1,
                              std::uint64_t seed = 99) {
    FingerprintConfig c;
    c.seed = seed;
    c.ring_cap = ring_cap;
    c.symbol_bits = bits;
    return c;
}

std::vector<std::uint64_t> bits_of(std::uint64_t value, std::size_t len) {
    std::vector<std::uint64_t> out(len);
    for (std::size_t i = 0; i < len; ++i) out[i] = (value >> i) & 1u;
    return out;
}

} // namespace

TEST_CASE("level table structure") {
    FingerprintMatcher one({1}, config_with(64));
    CHECK(one.level_lengths() == std::vector<std::uint64_t>{1});
    CHECK_NOTHROW(one.level_fingerprint(1));

    FingerprintMatcher five({1, 0, 1, 1, 0}, config_with(64));
    CHECK(five.level_lengths() == std::vector<std::uint64_t>{1, 2, 4, 5});
    for (std::uint64_t len : five.level_lengths())
        CHECK_NOTHROW(five.level_fingerprint(len));
    CHECK_THROWS_AS(five.level_fingerprint(3), SymbolError);

    // Same structure regardless of whether levels are materialized.
    FingerprintMatcher leveled({1, 0, 1, 1, 0}, config_with(2));
    CHECK(leveled.level_lengths() == std::vector<std::uint64_t>{1, 2, 4, 5});
    CHECK(leveled.level_fingerprint(5) == leveled.level_fingerprint(5));
}

TEST_CASE("empty patterns are rejected") {
    CHECK_THROWS_AS(FingerprintMatcher({}, config_with(64)), RelationError);
}

TEST_CASE("ring_cap must be a power of two") {
    CHECK_THROWS_AS(FingerprintMatcher({1}, config_with(3)), RelationError);
}

TEST_CASE("simple matches") {
    // pattern "ab" on "abab" -> ends 1 and 3
    FingerprintMatcher m({0, 1}, config_with(64));
    CHECK(matcher_matches(m, {0, 1, 0, 1}) == std::vector<std::size_t>{1, 3});

    FingerprintMatcher n({0, 0}, config_with(64));
    CHECK(matcher_matches(n, {0, 1}).empty());
}

TEST_CASE("exhaustive no-false-negatives and no-false-positives, both modes") {
    for (std::uint64_t cap : {std::uint64_t{2}, std::uint64_t{64}}) {
        for (std::size_t m = 1; m <= 5; ++m) {
            for (std::uint64_t pbits = 0; pbits < (1u << m); ++pbits) {
                const auto pattern = bits_of(pbits, m);
                for (std::size_t n = m; n <= 10; ++n) {
                    for (std::uint64_t tbits = 0; tbits < (1u << n); ++tbits) {
                        const auto text = bits_of(tbits, n);
                        FingerprintMatcher fm(pattern, config_with(cap));
                        INFO("cap=", cap, " m=", m, " pbits=", pbits, " n=", n,
                             " tbits=", tbits);
                        REQUIRE(matcher_matches(fm, text) ==
                                oracle::naive_matches(pattern, text));
                    }
                }
            }
        }
    }
}

TEST_CASE("random streams agree with the naive matcher") {
    std::mt19937_64 rng(41);
    struct Setup { std::size_t m; std::uint64_t cap; std::size_t text_len; };
    for (const Setup s : {Setup{32, 64, 4096}, Setup{32, 8, 4096},
                          Setup{100, 64, 4096}, Setup{257, 64, 8192}}) {
        std::vector<std::uint64_t> pattern(s.m), text(s.text_len);
        for (auto& c : pattern) c = rng() % 2;
        for (auto& c : text) c = rng() % 2;
        // Plant a few occurrences so the comparison is not vacuous.
        for (int k = 0; k < 4; ++k) {
            const std::size_t at = rng() % (s.text_len - s.m);
            std::copy(pattern.begin(), pattern.end(), text.begin() + at);
        }
        FingerprintMatcher fm(pattern, config_with(s.cap, 1, rng()));
        INFO("m=", s.m, " cap=", s.cap);
        CHECK(matcher_matches(fm, text) == oracle::naive_matches(pattern, text));
    }
}

TEST_CASE("periodic patterns stress the candidate progressions") {
    std::mt19937_64 rng(43);
    std::vector<std::vector<std::uint64_t>> patterns;
    patterns.push_back(std::vector<std::uint64_t>(24, 0)); // 0^24
    {
        std::vector<std::uint64_t> alt;
        for (int i = 0; i < 24; ++i) alt.push_back(i % 2);
        patterns.push_back(alt); // (01)^12
        std::vector<std::uint64_t> block;
        for (int i = 0; i < 27; ++i) block.push_back(i % 3 == 2 ? 1 : 0);
        patterns.push_back(block); // (001)^9
        // aabaa-like: periodic with a non-trivial border
        std::vector<std::uint64_t> border{0, 0, 1, 0, 0};
        std::vector<std::uint64_t> rep;
        for (int r = 0; r < 5; ++r)
            rep.insert(rep.end(), border.begin(), border.end());
        patterns.push_back(rep);
    }
    for (const auto& pattern : patterns) {
        for (std::uint64_t cap : {std::uint64_t{2}, std::uint64_t{4},
                                  std::uint64_t{8}}) {
            // Texts rich in occurrences: the pattern repeated with noise.
            std::vector<std::uint64_t> text;
            for (int r = 0; r < 12; ++r) {
                text.insert(text.end(), pattern.begin(), pattern.end());
                if (r % 3 == 1) text.push_back(rng() % 2);
            }
            for (int i = 0; i < 200; ++i) text.push_back(rng() % 2);
            FingerprintMatcher fm(pattern, config_with(cap, 1, rng()));
            INFO("m=", pattern.size(), " cap=", cap);
            CHECK(matcher_matches(fm, text) ==
                  oracle::naive_matches(pattern, text));
        }
    }
}

TEST_CASE("export/import resumes the stream exactly") {
    std::mt19937_64 rng(47);
    for (const std::uint64_t cap : {std::uint64_t{4}, std::uint64_t{64}}) {
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t m = 3 + rng() % 40;
            std::vector<std::uint64_t> pattern(m), text(600);
            for (auto& c : pattern) c = rng() % 2;
            for (auto& c : text) c = rng() % 2;
            for (int k = 0; k < 3; ++k) {
                const std::size_t at = rng() % (text.size() - m);
                std::copy(pattern.begin(), pattern.end(), text.begin() + at);
            }
            const std::size_t cut = rng() % text.size();

            FingerprintMatcher whole(pattern, config_with(cap, 1, trial));
            std::vector<std::size_t> expected;
            for (std::size_t i = 0; i < text.size(); ++i)
                if (whole.push(text[i])) expected.push_back(i);

            FingerprintMatcher alice(pattern, config_with(cap, 1, trial));
            std::vector<std::size_t> got;
            for (std::size_t i = 0; i < cut; ++i)
                if (alice.push(text[i])) got.push_back(i);
            const BitString state = alice.export_state();

            FingerprintMatcher bob(config_with(cap, 1, 12345));
            bob.import_state(state);
            CHECK(bob.export_state() == state); // canonical round-trip
            for (std::size_t i = cut; i < text.size(); ++i)
                if (bob.push(text[i])) got.push_back(i);
            CHECK(got == expected);
        }
    }
}

TEST_CASE("state import rejects tampering") {
    FingerprintMatcher m({0, 1, 1, 0, 1}, config_with(2));
    for (int i = 0; i < 20; ++i) m.push(i % 2);
    BitString state = m.export_state();

    FingerprintMatcher shell(config_with(2));
    BitString bad_version = state;
    bad_version.bytes[0] ^= 0xFF;
    CHECK_THROWS_AS(shell.import_state(bad_version), StateError);

    BitString truncated = state;
    truncated.nbits -= 9;
    CHECK_THROWS_AS(shell.import_state(truncated), StateError);

    // A different ring configuration cannot adopt the state.
    FingerprintMatcher other(config_with(8));
    CHECK_THROWS_AS(other.import_state(state), StateError);
}

TEST_CASE("state stays within the documented polylog envelope") {
    std::mt19937_64 rng(53);
    double prev_bits = 0;
    for (const std::uint64_t m :
         {std::uint64_t{64}, std::uint64_t{128}, std::uint64_t{1024},
          std::uint64_t{4096}, std::uint64_t{65536}}) {
        std::vector<std::uint64_t> pattern(m);
        for (auto& c : pattern) c = rng() % 2;
        FingerprintMatcher fm(pattern, config_with(64, 1, rng()));
        for (std::uint64_t i = 0; i < 3 * m; ++i) fm.push(rng() % 2);
        const double bits = static_cast<double>(fm.export_state().size_bits());
        const double log2m = std::log2(static_cast<double>(m));
        CHECK(bits <= static_cast<double>(kStateBitsConstant) * log2m * log2m);
        if (m >= 1024) CHECK(bits < static_cast<double>(m));
        if (prev_bits > 0 && m >= 1024) {
            // Doubling m grows the state no faster than the square of
            // the log-length ratio.
            const double ratio_cap = (log2m / (log2m - 1)) * (log2m / (log2m - 1));
            CHECK(bits / prev_bits <= ratio_cap * 1.15);
        }
        prev_bits = bits;
    }
}

TEST_CASE("no observed fingerprint collisions at desk scale") {
    // The per-position failure bound is m^2 / (2^61 - 1); with these
    // sizes the expected number of wrong positions over the whole run
    // is far below one, so the assertion is zero mismatches.
    std::mt19937_64 rng(59);
    std::uint64_t positions = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 65 + rng() % 200;
        std::vector<std::uint64_t> pattern(m), text(30000);
        for (auto& c : pattern) c = rng() % 2;
        for (auto& c : text) c = rng() % 2;
        for (int k = 0; k < 10; ++k) {
            const std::size_t at = rng() % (text.size() - m);
            std::copy(pattern.begin(), pattern.end(), text.begin() + at);
        }
        FingerprintMatcher fm(pattern, config_with(64, 1, rng()));
        CHECK(matcher_matches(fm, text) == oracle::naive_matches(pattern, text));
        positions += text.size();
    }
    CHECK(positions >= 1000000);
}
