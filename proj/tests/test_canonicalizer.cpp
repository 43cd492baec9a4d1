#include <doctest.h>

#include <random>

#include "relmatch/canonical.hpp"
#include "relmatch/classify.hpp"
#include "relmatch/gallery.hpp"
#include "test_support.hpp"

using namespace relmatch;

namespace {

// Random wildcard-free Boolean matrix: expand a permuted identity by
// duplicating rows/columns and sprinkling in all-zero ones. Every
// wildcard-free matrix has this shape, and none of these contain the
// wildcard submatrix.
DeltaMatrix random_wildcard_free(std::mt19937_64& rng) {
    const std::size_t k = 1 + rng() % 3; // identity core size
    const std::size_t rows = k + rng() % 3, cols = k + rng() % 3;
    // Assign each row/column a class: 0..k-1 for identity lines, k for
    // all-zero; ensure each identity class has at least one member.
    std::vector<std::size_t> row_class(rows), col_class(cols);
    for (std::size_t i = 0; i < rows; ++i)
        row_class[i] = i < k ? i : rng() % (k + 1);
    for (std::size_t j = 0; j < cols; ++j)
        col_class[j] = j < k ? j : rng() % (k + 1);
    std::shuffle(row_class.begin(), row_class.end(), rng);
    std::shuffle(col_class.begin(), col_class.end(), rng);
    std::vector<std::vector<std::int64_t>> entries(
        rows, std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            entries[i][j] =
                (row_class[i] < k && row_class[i] == col_class[j]) ? 1 : 0;
    std::vector<std::string> ps, ts;
    for (std::size_t i = 0; i < rows; ++i) ps.push_back("p" + std::to_string(i));
    for (std::size_t j = 0; j < cols; ++j) ts.push_back("t" + std::to_string(j));
    return DeltaMatrix(Alphabet(ps), Alphabet(ts), std::move(entries));
}

} // namespace

TEST_CASE("canonical maps of the 5x6 example") {
    const DeltaMatrix m = gallery::reducible_relation();
    const CanonicalMap map = CanonicalMap::build(m);
    const Alphabet& pa = m.pattern_alphabet();
    const Alphabet& ta = m.text_alphabet();

    // v->v, y->v, x->x, z->x, w dead
    CHECK(*map.pattern_target(pa.id("v")) == pa.id("v"));
    CHECK(*map.pattern_target(pa.id("y")) == pa.id("v"));
    CHECK(*map.pattern_target(pa.id("x")) == pa.id("x"));
    CHECK(*map.pattern_target(pa.id("z")) == pa.id("x"));
    CHECK_FALSE(map.pattern_target(pa.id("w")).has_value());

    // a->a, c->a, b->b, d->b, e->b, f dead
    CHECK(*map.text_target(ta.id("a")) == ta.id("a"));
    CHECK(*map.text_target(ta.id("c")) == ta.id("a"));
    CHECK(*map.text_target(ta.id("b")) == ta.id("b"));
    CHECK(*map.text_target(ta.id("d")) == ta.id("b"));
    CHECK(*map.text_target(ta.id("e")) == ta.id("b"));
    CHECK_FALSE(map.text_target(ta.id("f")).has_value());

    CHECK(map.pattern_representatives() ==
          std::vector<SymbolId>{pa.id("v"), pa.id("x")});
    CHECK(map.text_representatives() ==
          std::vector<SymbolId>{ta.id("a"), ta.id("b")});
    CHECK(map.has_dead_text());

    // The identity partners: v matches b, x matches a.
    CHECK(map.partner_of(pa.id("v")) == ta.id("b"));
    CHECK(map.partner_of(pa.id("x")) == ta.id("a"));
}

TEST_CASE("identity relation maps every symbol to itself") {
    const CanonicalMap map = CanonicalMap::build(gallery::exact_match_relation());
    for (SymbolId s = 0; s < 2; ++s) {
        CHECK(*map.pattern_target(s) == s);
        CHECK(*map.text_target(s) == s);
    }
    CHECK_FALSE(map.has_dead_text());
}

TEST_CASE("an all-zero matrix maps every symbol to dead") {
    const DeltaMatrix zero(Alphabet({"p0", "p1"}), Alphabet({"t0", "t1"}),
                           {{0, 0}, {0, 0}});
    const CanonicalMap map = CanonicalMap::build(zero);
    for (SymbolId s = 0; s < 2; ++s) {
        CHECK_FALSE(map.pattern_target(s).has_value());
        CHECK_FALSE(map.text_target(s).has_value());
    }
    CHECK(map.pattern_representatives().empty());
    CHECK(map.text_representatives().empty());
}

TEST_CASE("wildcard-containing matrices are rejected") {
    CHECK_THROWS_AS(CanonicalMap::build(gallery::wildcard_relation()),
                    RelationError);
}

TEST_CASE("map application is idempotent on random wildcard-free matrices") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const DeltaMatrix m = random_wildcard_free(rng);
        REQUIRE_FALSE(contains_wildcard_submatrix(m).first);
        const CanonicalMap map = CanonicalMap::build(m);
        for (SymbolId p = 0; p < m.rows(); ++p) {
            const auto t = map.pattern_target(p);
            if (t) CHECK(*map.pattern_target(*t) == *t);
        }
        for (SymbolId c = 0; c < m.cols(); ++c) {
            const auto t = map.text_target(c);
            if (t) CHECK(*map.text_target(*t) == *t);
        }
    }
}

TEST_CASE("pattern canonicalization on the 5x6 example") {
    const DeltaMatrix m = gallery::reducible_relation();
    const CanonicalMap map = CanonicalMap::build(m);
    const Alphabet& pa = m.pattern_alphabet();

    const auto rewritten = canonicalize_pattern(
        map, make_pattern(pa, {"v", "y", "x", "z"}));
    REQUIRE(std::holds_alternative<Pattern>(rewritten));
    CHECK(std::get<Pattern>(rewritten).ids ==
          std::vector<SymbolId>{pa.id("v"), pa.id("v"), pa.id("x"), pa.id("x")});

    const auto dead = canonicalize_pattern(map, make_pattern(pa, {"v", "w"}));
    CHECK(std::holds_alternative<AlwaysZero>(dead));

    CHECK_THROWS_AS(canonicalize_pattern(map, Pattern{{17}}), SymbolError);
}

TEST_CASE("identity map leaves patterns unchanged") {
    const CanonicalMap map = CanonicalMap::build(gallery::exact_match_relation());
    const Pattern p{{0, 1, 1, 0}};
    const auto rewritten = canonicalize_pattern(map, p);
    REQUIRE(std::holds_alternative<Pattern>(rewritten));
    CHECK(std::get<Pattern>(rewritten).ids == p.ids);
}

TEST_CASE("canonicalization preserves conjunction semantics") {
    // Window distance under AND on the original symbols must equal
    // exact matching of the rewritten strings with the dead-text rule.
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 120; ++trial) {
        const DeltaMatrix m = random_wildcard_free(rng);
        const CanonicalMap map = CanonicalMap::build(m);
        const std::size_t len = 1 + rng() % 4;
        for (const auto& pattern : oracle::all_strings(m.rows(), len)) {
            const auto canonical =
                canonicalize_pattern(map, Pattern{{pattern.begin(), pattern.end()}});
            for (int wtrial = 0; wtrial < 8; ++wtrial) {
                std::vector<SymbolId> window(len);
                for (auto& w : window)
                    w = static_cast<SymbolId>(rng() % m.cols());
                const std::int64_t direct = oracle::window_distance(
                    m, OperatorKind::And, pattern, window);

                std::int64_t rewritten_match;
                if (std::holds_alternative<AlwaysZero>(canonical)) {
                    rewritten_match = 0;
                } else {
                    rewritten_match = 1;
                    const auto& cp = std::get<Pattern>(canonical);
                    for (std::size_t j = 0; j < len; ++j) {
                        const auto t = map.text_target(window[j]);
                        if (!t || *t != map.partner_of(cp.ids[j]))
                            rewritten_match = 0;
                    }
                }
                CHECK(direct == rewritten_match);
            }
        }
    }
}
