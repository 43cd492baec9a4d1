#include <doctest.h>

#include <random>

#include "relmatch/nonlocal.hpp"
#include "relmatch/engines.hpp"
#include "relmatch/gallery.hpp"
#include "test_support.hpp"

using namespace relmatch;

namespace {

std::int64_t final_output(Engine& e, const std::vector<std::int64_t>& stream) {
    std::optional<std::int64_t> out;
    for (std::int64_t c : stream) out = e.push(c);
    REQUIRE(out.has_value());
    return *out;
}

} // namespace

TEST_CASE("edit distance examples") {
    {
        EditEngine e({0, 0, 0, 0});
        CHECK(final_output(e, {0, 0, 0, 0}) == 0);
    }
    {
        // Pattern of four ones against a window with a single one:
        // three replacements.
        EditEngine e({1, 1, 1, 1});
        CHECK(final_output(e, {0, 0, 1, 0}) == 3);
    }
    {
        EditEngine e({0, 1});
        CHECK(final_output(e, {1, 0}) == 2);
    }
}

TEST_CASE("edit engine equals the full-matrix DP on random small instances") {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t m = 1 + rng() % 8;
        std::vector<std::int64_t> pattern(m);
        for (auto& p : pattern) p = static_cast<std::int64_t>(rng() % 2);
        EditEngine e(pattern);
        const std::size_t tlen = m + rng() % 8;
        std::vector<std::int64_t> text(tlen);
        for (auto& t : text) t = static_cast<std::int64_t>(rng() % 2);
        for (std::size_t i = 0; i < tlen; ++i) {
            const auto out = e.push(text[i]);
            if (i + 1 < m) {
                CHECK_FALSE(out.has_value());
                continue;
            }
            const std::vector<std::int64_t> window(text.begin() + (i + 1 - m),
                                                   text.begin() + i + 1);
            REQUIRE(out.has_value());
            CHECK(*out == oracle::edit_distance_matrix(pattern, window));
        }
    }
}

TEST_CASE("edit distance triangle-inequality spot checks") {
    // d(P, W) <= d(P, W') + Hamming(W, W') for same-length windows.
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t m = 1 + rng() % 8;
        std::vector<std::int64_t> p(m), w1(m), w2(m);
        for (auto& v : p) v = static_cast<std::int64_t>(rng() % 2);
        for (auto& v : w1) v = static_cast<std::int64_t>(rng() % 2);
        for (auto& v : w2) v = static_cast<std::int64_t>(rng() % 2);
        std::int64_t hamming = 0;
        for (std::size_t j = 0; j < m; ++j) hamming += w1[j] != w2[j] ? 1 : 0;
        CHECK(oracle::edit_distance_matrix(p, w1) <=
              oracle::edit_distance_matrix(p, w2) + hamming);
    }
}

TEST_CASE("swap matching examples") {
    {
        SwapEngine e({10, 11}, 8); // "ab"
        CHECK(final_output(e, {11, 10}) == 1); // "ba": one swap
    }
    {
        SwapEngine e({10, 11}, 8);
        CHECK(final_output(e, {10, 10}) == 0); // "aa": multiset differs
    }
    {
        // Block codes: the wildcard block against the 'b' block matches,
        // the 'x' block against the 'b' block does not.
        SwapEngine star(swap_encode_pattern("*"));
        CHECK(final_output(star, swap_encode_text_symbol('b')) == 1);
        SwapEngine x(swap_encode_pattern("x"));
        CHECK(final_output(x, swap_encode_text_symbol('b')) == 0);
    }
}

TEST_CASE("greedy swap scan equals enumeration of all swap sets") {
    for (std::size_t k = 1; k <= 6; ++k) {
        for (std::uint32_t pmask = 0; pmask < (1u << k); ++pmask) {
            std::vector<std::int64_t> pattern(k);
            for (std::size_t j = 0; j < k; ++j)
                pattern[j] = (pmask >> j) & 1u;
            for (std::uint32_t wmask = 0; wmask < (1u << k); ++wmask) {
                std::vector<std::int64_t> window(k);
                for (std::size_t j = 0; j < k; ++j)
                    window[j] = (wmask >> j) & 1u;
                SwapEngine fresh(pattern);
                const std::int64_t got = final_output(fresh, window);
                CHECK(got == (oracle::swap_match_by_enumeration(pattern, window)
                                  ? 1
                                  : 0));
            }
        }
    }
}

TEST_CASE("swap block encodings") {
    CHECK(swap_encode_pattern("*x") ==
          std::vector<std::int64_t>{0, 0, 1, 0, 0, 0, 0, 0, 1, 0});
    std::vector<std::int64_t> ab = swap_encode_text_symbol('a');
    const auto b = swap_encode_text_symbol('b');
    ab.insert(ab.end(), b.begin(), b.end());
    CHECK(ab == std::vector<std::int64_t>{0, 0, 0, 1, 0, 0, 1, 0, 0, 0});
    CHECK(swap_encode_pattern("").empty());
    CHECK_THROWS_AS(swap_encode_pattern("q"), SymbolError);
    CHECK_THROWS_AS(swap_encode_text_symbol('*'), SymbolError);
}

TEST_CASE("swap matching of encoded strings equals conjunction matching") {
    // For every pattern over {*,x} and text over {a,b} up to length 6:
    // the encoded strings swap-match exactly when the original strings
    // match under AND with the wildcard relation, and no greedy swap
    // ever crosses a 5-bit block boundary.
    const DeltaMatrix wild = gallery::wildcard_relation();
    for (std::size_t k = 1; k <= 6; ++k) {
        for (std::uint32_t pmask = 0; pmask < (1u << k); ++pmask) {
            std::string pattern_text;
            std::vector<SymbolId> pattern_ids;
            for (std::size_t j = 0; j < k; ++j) {
                const bool is_star = ((pmask >> j) & 1u) != 0;
                pattern_text.push_back(is_star ? '*' : 'x');
                pattern_ids.push_back(is_star ? 0 : 1);
            }
            SwapEngine encoded(swap_encode_pattern(pattern_text));
            for (std::uint32_t tmask = 0; tmask < (1u << k); ++tmask) {
                std::vector<SymbolId> text_ids;
                std::vector<std::int64_t> encoded_text;
                for (std::size_t j = 0; j < k; ++j) {
                    const bool is_b = ((tmask >> j) & 1u) != 0;
                    text_ids.push_back(is_b ? 1 : 0);
                    const auto block = swap_encode_text_symbol(is_b ? 'b' : 'a');
                    encoded_text.insert(encoded_text.end(), block.begin(),
                                        block.end());
                }
                SwapEngine fresh(swap_encode_pattern(pattern_text));
                const std::int64_t swap_out = final_output(fresh, encoded_text);
                const std::int64_t and_out = oracle::window_distance(
                    wild, OperatorKind::And, pattern_ids, text_ids);
                INFO("k=", k, " pmask=", pmask, " tmask=", tmask);
                CHECK(swap_out == and_out);
                if (swap_out == 1) {
                    for (std::uint64_t pos : fresh.last_swap_positions())
                        CHECK(pos / 5 == (pos + 1) / 5);
                }
            }
        }
    }
}

TEST_CASE("nonlocal engines hand off state mid-stream") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + rng() % 10;
        std::vector<std::int64_t> pattern(m);
        for (auto& p : pattern) p = static_cast<std::int64_t>(rng() % 2);
        std::vector<std::int64_t> text(m * 3);
        for (auto& t : text) t = static_cast<std::int64_t>(rng() % 2);
        const std::size_t cut = rng() % text.size();

        EditEngine whole(pattern);
        std::vector<std::int64_t> expected;
        for (std::int64_t t : text)
            if (auto v = whole.push(t)) expected.push_back(*v);

        EditEngine alice(pattern);
        std::vector<std::int64_t> got;
        for (std::size_t i = 0; i < cut; ++i)
            if (auto v = alice.push(text[i])) got.push_back(*v);
        EditEngine bob;
        bob.import_state(alice.export_state());
        CHECK(bob.export_state() == alice.export_state());
        for (std::size_t i = cut; i < text.size(); ++i)
            if (auto v = bob.push(text[i])) got.push_back(*v);
        CHECK(got == expected);
    }
}
