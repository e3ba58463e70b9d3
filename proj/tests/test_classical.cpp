#include <doctest.h>

#include "ngl/classical.hpp"
#include "ngl/linalg.hpp"

using namespace ngl;

TEST_CASE("chsh(2) classical value: 16 deterministic sign pairs give 3/4") {
    const GameSpec g = build_chsh(2);
    ClassicalOptions opt;
    const ClassicalResult w = classical_value(g, opt);
    CHECK(w.winprob() == doctest::Approx(0.75).epsilon(1e-15));
    REQUIRE(w.value_exact.has_value());
    CHECK(*w.value_exact == Frac(3, 4));

    opt.mode = "bias";
    const ClassicalResult b = classical_value(g, opt);
    CHECK(b.value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(*b.value_exact == Frac(1, 2));
}

TEST_CASE("odd-cycle classical values are exactly 1 - 1/(2n)") {
    for (int n : {3, 5, 7}) {
        const ClassicalResult r = classical_value(build_odd_cycle(n));
        REQUIRE(r.value_exact.has_value());
        CHECK(*r.value_exact == Frac(2 * n - 1, 2 * n));
    }
}

TEST_CASE("ffl classical value is exactly 2/3") {
    const ClassicalResult r = classical_value(build_ffl());
    REQUIRE(r.value_exact.has_value());
    CHECK(*r.value_exact == Frac(2, 3));
}

TEST_CASE("ffl two-fold repetition does not decay") {
    const ClassicalResult r = classical_value_repeated(build_ffl(), 2);
    REQUIRE(r.value_exact.has_value());
    CHECK(*r.value_exact == Frac(2, 3));
}

TEST_CASE("chsh two-fold repetition gives 10/16") {
    const ClassicalResult r = classical_value_repeated(build_chsh(2), 2);
    REQUIRE(r.value_exact.has_value());
    CHECK(*r.value_exact == Frac(10, 16));
}

TEST_CASE("k=1 repetition equals the plain value") {
    const ClassicalResult a = classical_value(build_ffl());
    const ClassicalResult b = classical_value_repeated(build_ffl(), 1);
    CHECK(a.value == b.value);
    CHECK(a.tie_count == b.tie_count);
}

TEST_CASE("budget refusal reports the required count") {
    ClassicalOptions opt;
    opt.budget = 4;
    try {
        classical_value(build_chsh(2), opt);
        FAIL("expected BudgetError");
    } catch (const BudgetError& e) {
        CHECK(e.required == 16);
    }
}

TEST_CASE("all-plus sign tensor has classical bias 1") {
    const GameSpec g = build_xor_game({{"1", "2"}, {"1", "2"}}, std::vector<double>(4, 1.0),
                                      std::vector<double>(4, 0.25));
    ClassicalOptions opt;
    opt.mode = "bias";
    CHECK(classical_value(g, opt).value == doctest::Approx(1.0));
}

TEST_CASE("result does not depend on the worker count") {
    const GameSpec g = build_chsh(2);
    ClassicalOptions one, many;
    one.threads = 1;
    many.threads = 7;
    const ClassicalResult a = classical_value(g, one);
    const ClassicalResult b = classical_value(g, many);
    CHECK(a.value == b.value);
    CHECK(a.tie_count == b.tie_count);
    CHECK(a.argmax_strategy == b.argmax_strategy);

    ClassicalOptions exh = many;
    exh.exhaustive = true;
    const ClassicalResult c = classical_value(g, exh);
    CHECK(a.value == c.value);
    CHECK(a.tie_count == c.tie_count);
    CHECK(a.argmax_strategy == c.argmax_strategy);
}

TEST_CASE("repetition is super-multiplicative for random XOR games") {
    Rng rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> signs(4), dist(4);
        double sum = 0;
        for (int i = 0; i < 4; ++i) {
            signs[static_cast<size_t>(i)] = rng.uniform() < 0.5 ? 1.0 : -1.0;
            dist[static_cast<size_t>(i)] = rng.uniform() + 0.05;
            sum += dist[static_cast<size_t>(i)];
        }
        for (auto& d : dist) d /= sum;
        const GameSpec g = build_xor_game({{"1", "2"}, {"1", "2"}}, signs, dist);
        const double w1 = classical_value(g).winprob();
        const double w2 = classical_value_repeated(g, 2).winprob();
        CHECK(w2 >= w1 * w1 - 1e-12);
    }
}

TEST_CASE("bias mode rejects predicate games") {
    ClassicalOptions opt;
    opt.mode = "bias";
    CHECK_THROWS_AS(classical_value(build_ffl(), opt), std::invalid_argument);
}
