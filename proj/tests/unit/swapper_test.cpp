#include <doctest.h>

#include <bit>
#include <cmath>

#include "tradenull/labkit.hpp"
#include "tradenull/metrics.hpp"
#include "tradenull/swapper.hpp"

using namespace tradenull;

namespace {

std::int64_t cells_differing(const BinaryMatrix& a, const BinaryMatrix& b) {
    std::int64_t diff = 0;
    const auto wa = a.words(), wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) diff += std::popcount(wa[i] ^ wb[i]);
    return diff;
}

}  // namespace

TEST_CASE("is_checkerboard truth table") {
    CHECK(is_checkerboard(0, 1, 1, 0));
    CHECK(is_checkerboard(1, 0, 0, 1));
    CHECK_FALSE(is_checkerboard(1, 1, 1, 0));
    CHECK_FALSE(is_checkerboard(0, 0, 0, 0));
    CHECK_FALSE(is_checkerboard(1, 1, 0, 0));
    CHECK_FALSE(is_checkerboard(1, 0, 1, 0));
    CHECK_FALSE(is_checkerboard(1, 1, 1, 1));
}

TEST_CASE("attempt_swap on forced and impossible cases") {
    Rng rng(3);
    BinaryMatrix identity{{1, 0}, {0, 1}};
    CHECK(attempt_swap(identity, rng));
    CHECK(identity == BinaryMatrix{{0, 1}, {1, 0}});
    CHECK(attempt_swap(identity, rng));  // swapping back: the involution
    CHECK(identity == BinaryMatrix{{1, 0}, {0, 1}});

    BinaryMatrix ones{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
    for (int i = 0; i < 1000; ++i) CHECK_FALSE(attempt_swap(ones, rng));
    CHECK(ones == BinaryMatrix{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});

    BinaryMatrix row{{1, 0, 1}};
    CHECK_THROWS_AS(attempt_swap(row, rng), std::invalid_argument);
}

TEST_CASE("swaps preserve margins") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        BinaryMatrix m = gen_random_fill(3 + static_cast<int>(rng.bounded(20)),
                                         3 + static_cast<int>(rng.bounded(20)),
                                         0.05 + 0.9 * rng.real53(), rng);
        const Margins before = margins(m);
        Rng swap_rng(rng.next_u64());
        for (int i = 0; i < 500; ++i) attempt_swap(m, swap_rng);
        CHECK(margins(m) == before);
    }
}

TEST_CASE("sequential swap ensemble: consecutive nulls differ in exactly 4 cells") {
    const BinaryMatrix start{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
    SwapConfig cfg;
    cfg.burn_in_attempts = 200;
    cfg.seed = 11;
    const auto nulls = sequential_swap_ensemble(start, 6, cfg);
    CHECK(nulls.size() == 6);
    for (const auto& null : nulls) CHECK(margins(null) == margins(start));
    for (std::size_t i = 1; i < nulls.size(); ++i)
        CHECK(cells_differing(nulls[i - 1], nulls[i]) == 4);
}

TEST_CASE("sequential swap refuses single-configuration matrices") {
    SwapConfig cfg;
    cfg.burn_in_attempts = 10;
    CHECK_THROWS_AS(sequential_swap_ensemble(BinaryMatrix{{1, 1}, {1, 1}}, 2, cfg),
                    NoSwapPossible);
}

TEST_CASE("sequential swap long-run frequencies are not uniform") {
    // Nulls one successful swap apart oversample configurations with many
    // checkerboards; on the 5-configuration 3x3 family the skew is strong.
    const BinaryMatrix start{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
    const auto configs = enumerate_margin_fixed(margins(start));
    REQUIRE(configs.size() == 5);

    SwapConfig cfg;
    cfg.burn_in_attempts = 1000;
    cfg.seed = 4242;
    const auto nulls = sequential_swap_ensemble(start, 10000, cfg);
    std::map<std::string, std::int64_t> freq;
    for (const auto& config : configs) freq.emplace(canonical_key(config), 0);
    for (const auto& null : nulls) {
        const auto it = freq.find(canonical_key(null));
        REQUIRE(it != freq.end());
        ++it->second;
    }
    std::vector<std::int64_t> counts;
    for (const auto& [k, v] : freq) counts.push_back(v);
    CHECK(chi_square_uniform(counts).p_value < 0.01);
}

TEST_CASE("independent swap") {
    Rng rng(31);
    const BinaryMatrix m = gen_random_fill(12, 9, 0.5, rng);

    SwapConfig none;
    none.n_swaps = 0;
    CHECK(independent_swap(m, none) == m);

    SwapConfig attempted;
    attempted.n_swaps = 2000;
    attempted.seed = 5;
    CHECK(margins(independent_swap(m, attempted)) == margins(m));

    SwapConfig successful;
    successful.n_swaps = 3;
    successful.count_mode = SwapCountMode::successful;
    successful.seed = 5;
    const BinaryMatrix identity{{1, 0}, {0, 1}};
    // 3 successful swaps on the 2-configuration matrix: ends on the other one
    CHECK(independent_swap(identity, successful) == BinaryMatrix{{0, 1}, {1, 0}});

    CHECK_THROWS_AS(independent_swap(BinaryMatrix{{1, 1}, {1, 1}}, successful), NoSwapPossible);
}

TEST_CASE("estimate_attempts_per_success formula and symmetry") {
    CHECK(estimate_attempts_per_success(0.5) == doctest::Approx(8.0));
    CHECK(estimate_attempts_per_success(0.3) == doctest::Approx(11.337868).epsilon(1e-6));
    CHECK(estimate_attempts_per_success(0.9) == doctest::Approx(61.728395).epsilon(1e-6));
    CHECK(estimate_attempts_per_success(0.1) == doctest::Approx(61.728395).epsilon(1e-6));
    for (double f : {0.05, 0.2, 0.35, 0.42})
        CHECK(estimate_attempts_per_success(f) ==
              doctest::Approx(estimate_attempts_per_success(1.0 - f)));
    CHECK_THROWS_AS(estimate_attempts_per_success(0.0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_attempts_per_success(1.0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_attempts_per_success(-0.2), std::invalid_argument);
}

TEST_CASE("recommended_swap_count") {
    // 10x10 with 50 presences: 2 * 50 * 8 attempts
    Rng rng(8);
    BinaryMatrix m(10, 10);
    int placed = 0;
    while (placed < 50) {
        const int r = static_cast<int>(rng.bounded(10));
        const int c = static_cast<int>(rng.bounded(10));
        if (!m.get(r, c)) {
            m.set(r, c, true);
            ++placed;
        }
    }
    CHECK(recommended_swap_count(m) == 800);
    CHECK_THROWS_AS(recommended_swap_count(BinaryMatrix(4, 4)), std::invalid_argument);
    CHECK_THROWS_AS(recommended_swap_count(BinaryMatrix{{1, 1}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("empirical attempts per success tracks the estimate at fill 0.5") {
    Rng rng(606);
    BinaryMatrix m = gen_random_fill(100, 100, 0.5, rng);
    Rng swap_rng(607);
    const std::int64_t attempts = 100000;
    std::int64_t successes = 0;
    for (std::int64_t i = 0; i < attempts; ++i)
        if (attempt_swap(m, swap_rng)) ++successes;
    REQUIRE(successes > 0);
    const double measured = static_cast<double>(attempts) / static_cast<double>(successes);
    CHECK(measured > 8.0 * 0.75);
    CHECK(measured < 8.0 * 1.25);
}
