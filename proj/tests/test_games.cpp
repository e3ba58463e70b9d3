#include <doctest.h>

#include <Eigen/SVD>

#include "ngl/games.hpp"

using namespace ngl;

TEST_CASE("chsh(2) matches the hand-expanded four-term game matrix") {
    const GameSpec g = build_chsh(2);
    REQUIRE(g.players == 2);
    CHECK(g.question_sets[0].size() == 2);
    CHECK(g.question_sets[1].size() == 2);  // ordered pairs (1,2) and (2,1)
    CHECK(g.question_sets[1][0] == "1.2");
    CHECK(g.question_sets[1][1] == "2.1");

    const GameTensor t = game_tensor(g);
    // ¼·[[+1,+1],[+1,−1]] over Bob questions {(1,2),(2,1)}
    CHECK(t.at({0, 0}) == doctest::Approx(0.25));
    CHECK(t.at({0, 1}) == doctest::Approx(0.25));
    CHECK(t.at({1, 0}) == doctest::Approx(0.25));
    CHECK(t.at({1, 1}) == doctest::Approx(-0.25));
    CHECK(t.normalization == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("chsh rejects n < 2") {
    CHECK_THROWS_AS(build_chsh(1), std::invalid_argument);
}

TEST_CASE("chsh tensor absolute values sum to 1 for several n") {
    for (int n : {2, 3, 4, 5}) {
        const GameTensor t = game_tensor(build_chsh(n));
        CHECK(t.normalization == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("odd cycle construction") {
    const GameSpec g = build_odd_cycle(3);
    long long nonzero = 0;
    for (double p : g.distribution)
        if (p > 0) ++nonzero;
    CHECK(nonzero == 6);  // 2n pairs
    for (double p : g.distribution)
        if (p > 0) CHECK(p == doctest::Approx(1.0 / 6.0));

    CHECK_THROWS_AS(build_odd_cycle(4), std::invalid_argument);

    const GameSpec g5 = build_odd_cycle(5);
    long long nz5 = 0;
    for (double p : g5.distribution)
        if (p > 0) ++nz5;
    CHECK(nz5 == 10);
}

TEST_CASE("ffl distribution and (1,0) winning answers") {
    const GameSpec g = build_ffl();
    double sum = 0;
    for (double p : g.distribution) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    // (s,t) = (1,0): win iff (a|1) != (b|0) iff 1 != b iff b = 0, any a.
    const long long qf = g.tuple_to_flat({1, 0});
    CHECK(g.win(qf, 0));        // a=0 b=0
    CHECK_FALSE(g.win(qf, 1));  // a=0 b=1
    CHECK(g.win(qf, 2));        // a=1 b=0
    CHECK_FALSE(g.win(qf, 3));
}

TEST_CASE("build_xor_game validates inputs") {
    const GameSpec chsh = build_chsh(2);
    const GameSpec manual = build_xor_game(chsh.question_sets, chsh.sign_tensor, chsh.distribution);
    const GameTensor a = game_tensor(chsh);
    const GameTensor b = game_tensor(manual);
    for (size_t i = 0; i < a.entries.size(); ++i) CHECK(a.entries[i] == doctest::Approx(b.entries[i]));

    auto bad_sign = chsh.sign_tensor;
    bad_sign[0] = 0.5;
    CHECK_THROWS_AS(build_xor_game(chsh.question_sets, bad_sign, chsh.distribution),
                    std::invalid_argument);

    auto bad_dist = chsh.distribution;
    bad_dist[0] += 0.25;
    CHECK_THROWS_AS(build_xor_game(chsh.question_sets, chsh.sign_tensor, bad_dist),
                    std::invalid_argument);
}

TEST_CASE("game_tensor rejects predicate games") {
    CHECK_THROWS_AS(game_tensor(build_ffl()), std::domain_error);
}

TEST_CASE("zero-probability rows give zero tensor rows") {
    const GameSpec g = build_chsh(3);
    const GameTensor t = game_tensor(g);
    // Alice question 3 has zero mass on Bob pair (1,2).
    CHECK(t.at({2, 0}) == 0.0);
}

TEST_CASE("symmetrize yields the block form with paired eigenvalues") {
    const GameTensor t = game_tensor(build_chsh(2));
    const SymmetrizedMatrix sym = symmetrize(t);
    REQUIRE(sym.matrix.rows() == 4);
    CHECK((sym.matrix - sym.matrix.transpose()).norm() == doctest::Approx(0.0));
    CHECK(sym.matrix.topLeftCorner(2, 2).norm() == doctest::Approx(0.0));
    CHECK(sym.matrix.bottomRightCorner(2, 2).norm() == doctest::Approx(0.0));

    // Eigenvalues ±σ/2 for each singular value σ of G.
    const RMat g = t.as_matrix();
    Eigen::JacobiSVD<RMat> svd(g);
    const RVec ev = hermitian_eigenvalues(sym.matrix.cast<cxd>());
    const auto& sv = svd.singularValues();
    CHECK(ev(3) == doctest::Approx(sv(0) / 2));
    CHECK(ev(0) == doctest::Approx(-sv(0) / 2));
    CHECK(ev(2) == doctest::Approx(sv(1) / 2));
    CHECK(ev(1) == doctest::Approx(-sv(1) / 2));

    CHECK_THROWS_AS(symmetrize(GameTensor{{2, 2, 2}, std::vector<double>(8, 0.125), 1.0}),
                    std::domain_error);
}

TEST_CASE("reference bounds") {
    CHECK(reference_bounds("chsh_d_upper", 2) == doctest::Approx(0.5 + 0.5 / std::sqrt(2.0)));
    CHECK(reference_bounds("chsh_d_upper", 2) == doctest::Approx(0.853553).epsilon(1e-6));
    CHECK(reference_bounds("torpedo_classical", 2) == doctest::Approx(0.75));
    CHECK(reference_bounds("torpedo_classical", 3) == doctest::Approx(11.0 / 12.0));
    CHECK(reference_bounds("torpedo_quantum", 2) == doctest::Approx(0.79));
    CHECK(reference_bounds("torpedo_ratio", 2) == doctest::Approx(1.053).epsilon(1e-3));
    CHECK(reference_bounds("torpedo_ratio", 3) == doctest::Approx(1.091).epsilon(1e-3));
    CHECK_THROWS_AS(reference_bounds("nope", 2), std::invalid_argument);
}

TEST_CASE("every constructed game passes its own validator") {
    build_chsh(2).validate();
    build_chsh(5).validate();
    build_odd_cycle(3).validate();
    build_odd_cycle(7).validate();
    build_ffl().validate();
}

TEST_CASE("tuple labels round-trip") {
    const std::vector<int> t{0, 3, 1};
    CHECK(tuple_label(t) == "1.4.2");
    CHECK(parse_tuple_label("1.4.2") == t);
}
