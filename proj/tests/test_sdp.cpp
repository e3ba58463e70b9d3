#include <doctest.h>

#include "ngl/classical.hpp"
#include "ngl/repetition.hpp"
#include "ngl/sdp.hpp"

using namespace ngl;

namespace {

GameSpec random_xor_game(Rng& rng, int rows, int cols) {
    std::vector<std::vector<std::string>> qs(2);
    for (int i = 0; i < rows; ++i) qs[0].push_back(std::to_string(i + 1));
    for (int j = 0; j < cols; ++j) qs[1].push_back(std::to_string(j + 1));
    std::vector<double> signs(static_cast<size_t>(rows) * cols), dist(signs.size());
    double sum = 0;
    for (size_t i = 0; i < signs.size(); ++i) {
        signs[i] = rng.uniform() < 0.5 ? 1.0 : -1.0;
        dist[i] = rng.uniform() + 0.02;
        sum += dist[i];
    }
    for (auto& d : dist) d /= sum;
    return build_xor_game(std::move(qs), std::move(signs), std::move(dist));
}

}  // namespace

TEST_CASE("chsh(2) quantum bias is 1/√2") {
    const QuantumBiasResult r = quantum_bias_bipartite(game_tensor(build_chsh(2)));
    CHECK(r.bias == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(r.bias == doctest::Approx(0.707107).epsilon(1e-6));
}

TEST_CASE("rank-one all-plus tensor reaches bias 1") {
    const GameSpec g = build_xor_game({{"1", "2"}, {"1", "2"}}, std::vector<double>(4, 1.0),
                                      std::vector<double>(4, 0.25));
    CHECK(quantum_bias_bipartite(game_tensor(g)).bias == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("xor-combined chsh squares the bias to 1/2") {
    RepetitionSpec spec;
    spec.base = build_chsh(2);
    spec.copies = 2;
    spec.rule = RepetitionRule::XorCombine;
    const GameSpec doubled = repeat_game(spec);
    const QuantumBiasResult r = quantum_bias_bipartite(game_tensor(doubled));
    CHECK(r.bias == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("solver trace is monotone per half-sweep") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const GameSpec g = random_xor_game(rng, 2 + trial % 3, 2 + (trial / 2) % 3);
        const QuantumBiasResult r = quantum_bias_bipartite(game_tensor(g));
        for (size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1] - 1e-12);
    }
}

TEST_CASE("classical/quantum sandwich on random games") {
    Rng rng(23);
    ClassicalOptions copt;
    copt.mode = "bias";
    for (int trial = 0; trial < 20; ++trial) {
        const GameSpec g = random_xor_game(rng, 2 + trial % 3, 2 + (trial / 3) % 3);
        const double classical = classical_value(g, copt).value;
        const double quantum = quantum_bias_bipartite(game_tensor(g)).bias;
        CHECK(quantum >= classical - 1e-7);
        CHECK(quantum <= 1.0 + 1e-9);
    }
}

TEST_CASE("solver value is invariant under relabelings and the sign/relabel flip") {
    Rng rng(29);
    const GameSpec g = random_xor_game(rng, 3, 3);
    const double base = quantum_bias_bipartite(game_tensor(g)).bias;

    GameSpec permuted = g;
    // Swap Alice questions 1 and 3 (rows of both tables).
    for (int j = 0; j < 3; ++j) {
        std::swap(permuted.distribution[static_cast<size_t>(j)],
                  permuted.distribution[static_cast<size_t>(6 + j)]);
        std::swap(permuted.sign_tensor[static_cast<size_t>(j)],
                  permuted.sign_tensor[static_cast<size_t>(6 + j)]);
    }
    CHECK(quantum_bias_bipartite(game_tensor(permuted)).bias == doctest::Approx(base).epsilon(1e-7));

    // Global sign flip composed with one player's answer relabeling keeps the bias.
    GameSpec flipped = g;
    for (auto& s : flipped.sign_tensor) s = -s;
    CHECK(quantum_bias_bipartite(game_tensor(flipped)).bias == doctest::Approx(base).epsilon(1e-7));
}

TEST_CASE("primal feasibility reports") {
    const SdpProblem prob = tsirelson_relaxation(game_tensor(build_chsh(2)));
    const Eigen::Index n = prob.objective.rows();

    SdpProblem zero_rhs = prob;
    for (auto& c : zero_rhs.rhs) c = 0.0;
    const FeasibilityReport z0 = primal_feasibility(zero_rhs, RMat::Zero(n, n));
    CHECK(z0.feasible);
    CHECK(z0.objective == doctest::Approx(0.0));

    const FeasibilityReport neg = primal_feasibility(prob, -RMat::Identity(n, n));
    CHECK_FALSE(neg.feasible);
    CHECK(neg.min_eig == doctest::Approx(-1.0));

    // Gram matrix of the solver vectors: feasible, objective = bias.
    const QuantumBiasResult sol = quantum_bias_bipartite(game_tensor(build_chsh(2)));
    const RMat gram = gram_from_vectors(sol);
    const FeasibilityReport fr = primal_feasibility(prob, gram, 1e-7);
    CHECK(fr.feasible);
    CHECK(fr.objective == doctest::Approx(sol.bias).epsilon(1e-6));
}

TEST_CASE("closed-form reference dual vectors") {
    // 3xor, n=3, ω=2/3: first block value (2/3)/(3!·3) = 2/54.
    const auto y3 = reference_dual_y("3xor", 3, 0, 1, 2.0 / 3.0);
    REQUIRE(y3.size() == 27);
    CHECK(y3[0] == doctest::Approx(2.0 / 54.0));
    CHECK(y3[2] == doctest::Approx(2.0 / 54.0));
    CHECK(y3[3] == doctest::Approx((2.0 / 3.0) / (6.0 * 3 * 2)));
    CHECK(y3[9] == doctest::Approx((2.0 / 3.0) / (6.0 * 3 * 2 * 1)));

    // Blocks 1/(3n) and 1/(3n(n−1)); at n=2 both equal 1/6.
    const auto yf = reference_dual_y("ffl_wedge", 2);
    REQUIRE(yf.size() == 4);
    CHECK(yf[0] == doctest::Approx(1.0 / 6.0));
    CHECK(yf[1] == doctest::Approx(1.0 / 6.0));
    CHECK(yf[2] == doctest::Approx(1.0 / 6.0));
    CHECK(yf[3] == doctest::Approx(1.0 / 6.0));
    const auto yf3 = reference_dual_y("ffl_wedge", 3);
    REQUIRE(yf3.size() == 9);
    CHECK(yf3[0] == doctest::Approx(1.0 / 9.0));
    CHECK(yf3[8] == doctest::Approx(1.0 / 18.0));

    const auto plain = reference_dual_y("nxor", 4, 3, 1, 0.5);
    const auto wedge = reference_dual_y("nxor_wedge", 4, 3, 1, 0.5);
    REQUIRE(plain.size() == wedge.size());
    for (size_t i = 0; i < plain.size(); ++i) CHECK(plain[i] == doctest::Approx(wedge[i]));

    CHECK_THROWS_AS(reference_dual_y("bogus", 3), std::invalid_argument);
    CHECK_THROWS_AS(reference_dual_y("nxor", 2, 3), std::invalid_argument);
}

TEST_CASE("dual certificate audit") {
    const SymmetrizedMatrix sym = symmetrize(game_tensor(build_chsh(2)));
    const Eigen::Index n = sym.matrix.rows();

    // Spectral-radius diagonal dominates.
    const RVec ev = hermitian_eigenvalues(sym.matrix.cast<cxd>());
    const double radius = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
    const DualCertificate big =
        dual_certificate_audit(sym.matrix, std::vector<double>(static_cast<size_t>(n), radius));
    CHECK(big.psd);
    CHECK(big.min_eig >= -1e-12);

    const DualCertificate zero =
        dual_certificate_audit(sym.matrix, std::vector<double>(static_cast<size_t>(n), 0.0));
    CHECK_FALSE(zero.psd);

    CHECK_THROWS_AS(dual_certificate_audit(sym.matrix, std::vector<double>(2, 1.0)),
                    std::invalid_argument);

    // Ostrev-style per-player blocks at ω = 1/√2 certify the chsh bias:
    // columns first (n(n−1) of them), then rows.
    const double omega = 1.0 / std::sqrt(2.0);
    std::vector<double> y(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        y[static_cast<size_t>(i)] = i < 2 ? omega / (2.0 * 2.0 * (2.0 - 1.0)) : omega / (2.0 * 2.0);
    const DualCertificate blocks = dual_certificate_audit(sym.matrix, y);
    CHECK(blocks.psd);
    double dual_value = 0;
    for (double v : y) dual_value += v;
    CHECK(dual_value == doctest::Approx(omega));
}

TEST_CASE("rayleigh oracle agrees with the eigendecomposition") {
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 4 + trial * 3;
        RMat a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
        const RMat sym = 0.5 * (a + a.transpose());
        const double direct = hermitian_eigenvalues(sym.cast<cxd>()).minCoeff();
        const double oracle = rayleigh_min_oracle(sym);
        CHECK(oracle == doctest::Approx(direct).epsilon(1e-6));
    }
}

TEST_CASE("duality gap classification") {
    const GameTensor tensor = game_tensor(build_chsh(2));
    const SdpProblem prob = tsirelson_relaxation(tensor);
    const SymmetrizedMatrix sym = symmetrize(tensor);
    const Eigen::Index n = sym.matrix.rows();

    // Z = 0 with zero rhs: vanishing.
    SdpProblem zero_rhs = prob;
    for (auto& c : zero_rhs.rhs) c = 0.0;
    const double omega = 1.0 / std::sqrt(2.0);
    std::vector<double> y(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        y[static_cast<size_t>(i)] = i < 2 ? omega / 4.0 : omega / 4.0;
    const GapReport zero = duality_gap(zero_rhs, RMat::Zero(n, n), y, sym.matrix);
    CHECK(zero.classification == "vanishing");
    CHECK(zero.gap_value == doctest::Approx(0.0));

    // Solver Gram against the certifying y: gap ≈ 0 (strong duality).
    const QuantumBiasResult sol = quantum_bias_bipartite(tensor);
    const RMat gram = gram_from_vectors(sol);
    std::vector<double> ycert(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        ycert[static_cast<size_t>(i)] = i < 2 ? omega / 4.0 : omega / 4.0;
    const GapReport tight = duality_gap(prob, gram, ycert, sym.matrix, 1e-6);
    CHECK(tight.classification == "vanishing");
    CHECK(tight.gap_value >= -1e-9);

    // Doubling y doubles the dual side: positive gap, weak duality.
    std::vector<double> y2 = ycert;
    for (auto& v : y2) v *= 2.0;
    const GapReport weak = duality_gap(prob, gram, y2, sym.matrix, 1e-6);
    CHECK(weak.classification == "weak");
    CHECK(weak.gap_value > 0.0);
    CHECK(weak.gap_value == doctest::Approx(tight.gap_value + tight.primal_value).epsilon(1e-6));
}

TEST_CASE("flatten_symmetrize handles three players") {
    GameSpec g = build_xor_game(
        {{"1", "2"}, {"1", "2"}, {"1", "2"}},
        std::vector<double>(8, 1.0),
        std::vector<double>(8, 0.125));
    const SymmetrizedMatrix sym = flatten_symmetrize(game_tensor(g));
    CHECK(sym.matrix.rows() == 2 + 4);
    CHECK((sym.matrix - sym.matrix.transpose()).norm() == doctest::Approx(0.0));
}

TEST_CASE("quantum_bias_bipartite rejects non-bipartite tensors") {
    const GameSpec g = build_xor_game({{"1", "2"}, {"1", "2"}, {"1", "2"}},
                                      std::vector<double>(8, 1.0), std::vector<double>(8, 0.125));
    CHECK_THROWS_AS(quantum_bias_bipartite(game_tensor(g)), std::domain_error);
}

TEST_CASE("converged vectors induce a certifying dual: strong duality on random games") {
    // y_s = ‖Σ_t G_st v_t‖/2 and z_t = ‖Σ_s G_st u_s‖/2 from the solver's own
    // vectors form a dual candidate; its value matching the primal pins the
    // solver to the true optimum from above.
    Rng rng(515);
    for (int trial = 0; trial < 100; ++trial) {
        const int rows = 2 + trial % 4, cols = 2 + (trial / 4) % 4;
        const GameSpec g = random_xor_game(rng, rows, cols);
        const GameTensor t = game_tensor(g);
        const QuantumBiasResult r = quantum_bias_bipartite(t);
        const RMat gm = t.as_matrix();

        std::vector<double> yz(static_cast<size_t>(cols + rows));
        for (int tt = 0; tt < cols; ++tt) {
            RVec m = RVec::Zero(r.u[0].size());
            for (int s = 0; s < rows; ++s) m += gm(s, tt) * r.u[static_cast<size_t>(s)];
            yz[static_cast<size_t>(tt)] = m.norm() / 2;
        }
        for (int s = 0; s < rows; ++s) {
            RVec w = RVec::Zero(r.v[0].size());
            for (int tt = 0; tt < cols; ++tt) w += gm(s, tt) * r.v[static_cast<size_t>(tt)];
            yz[static_cast<size_t>(cols + s)] = w.norm() / 2;
        }
        const SymmetrizedMatrix sym = symmetrize(t);
        const DualCertificate cert = dual_certificate_audit(sym.matrix, yz);
        double dual_value = 0;
        for (double v : yz) dual_value += v;
        CHECK(cert.min_eig >= -1e-5);                     // feasible up to convergence noise
        CHECK(std::abs(dual_value - r.bias) <= 1e-6);     // vanishing duality gap
    }
}
