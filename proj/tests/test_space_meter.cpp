#include <doctest.h>

#include "relmatch/meter.hpp"
#include "test_support.hpp"

using namespace relmatch;

TEST_CASE("naive engines hold at least the window") {
    const auto samples = measure("naive-hamming", {1, 64, 1024}, 3);
    REQUIRE(samples.size() == 3);
    CHECK(samples[0].state_bits >= 1);
    CHECK(samples[1].state_bits >= 64);
    CHECK(samples[2].state_bits >= 1024);
    CHECK(samples[2].engine_id == "naive-hamming");
}

TEST_CASE("the conjunction engine stays sublinear at m = 1024") {
    const auto naive = measure("naive-and", {1024}, 3);
    const auto fast = measure("conjunction", {1024}, 3);
    CHECK(naive[0].state_bits >= 1024);
    CHECK(fast[0].state_bits < 1024);
}

TEST_CASE("growth fits: naive near 1, conjunction well below 1/2") {
    std::vector<std::uint64_t> ms;
    for (std::size_t k = 6; k <= 13; ++k) ms.push_back(std::uint64_t{1} << k);
    const GrowthFit naive = fit_growth(measure("naive-hamming", ms, 5));
    CHECK(naive.slope >= 0.9);
    CHECK(naive.slope <= 1.1);
    CHECK(naive.r2 > 0.95);

    std::vector<std::uint64_t> big;
    for (std::size_t k = 10; k <= 16; ++k) big.push_back(std::uint64_t{1} << k);
    const GrowthFit fast = fit_growth(measure("conjunction", big, 5));
    CHECK(fast.slope <= 0.5);
    CHECK(fast.slope >= 0.0);
}

TEST_CASE("synthetic fits") {
    std::vector<SpaceSample> constant, linear;
    for (std::uint64_t m : {16, 32, 64, 128, 256}) {
        constant.push_back({"c", m, 500});
        linear.push_back({"l", m, 10 * m});
    }
    CHECK(fit_growth(constant).slope == doctest::Approx(0.0));
    CHECK(fit_growth(linear).slope == doctest::Approx(1.0));
    CHECK(fit_growth(linear).r2 == doctest::Approx(1.0));
}

TEST_CASE("degenerate fits are rejected") {
    std::vector<SpaceSample> few = {{"x", 1, 10}, {"x", 2, 20}, {"x", 4, 30}};
    CHECK_THROWS_AS(fit_growth(few), Error);
    std::vector<SpaceSample> same = {
        {"x", 8, 10}, {"x", 8, 12}, {"x", 8, 11}, {"x", 8, 13}};
    CHECK_THROWS_AS(fit_growth(same), Error);
}

TEST_CASE("measurement is deterministic under a fixed seed") {
    for (const char* id : {"naive-hamming", "conjunction", "edit", "swap",
                           "naive-linf", "naive-eq"}) {
        const auto a = measure(id, {32, 64}, 9);
        const auto b = measure(id, {32, 64}, 9);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i].state_bits == b[i].state_bits);
    }
}

TEST_CASE("ring state size is independent of stream content") {
    const auto a = measure("naive-hamming", {128}, 1);
    const auto b = measure("naive-hamming", {128}, 999);
    CHECK(a[0].state_bits == b[0].state_bits);
}

TEST_CASE("unknown engines are rejected") {
    CHECK_THROWS_AS(measure("naive-bogus", {8}, 1), ParseError);
    CHECK_THROWS_AS(meter_entry("also-bogus"), ParseError);
}

TEST_CASE("every registered engine measures and round-trips its state") {
    for (const auto& id : meter_engine_ids()) {
        const auto samples = measure(id, {5, 17}, 21);
        REQUIRE(samples.size() == 2);
        for (const auto& s : samples) CHECK(s.state_bits > 0);
    }
}

TEST_CASE("CSV rendering") {
    const std::vector<SpaceSample> samples = {{"naive-hamming", 64, 174}};
    CHECK(samples_to_csv(samples) ==
          "engine_id,m,state_bits\nnaive-hamming,64,174\n");
}
