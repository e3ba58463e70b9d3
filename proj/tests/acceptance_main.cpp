// Acceptance suite: golden-constant reproduction plus property checks, one
// pass/fail line per criterion. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <Eigen/SVD>

#include "ngl/certify.hpp"
#include "ngl/classical.hpp"
#include "ngl/json_io.hpp"
#include "ngl/opident.hpp"
#include "ngl/repetition.hpp"

using namespace ngl;

namespace {

int failures = 0;

void report(int id, bool ok, const char* what, double seconds) {
    std::printf("%s criterion %2d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", id, what, seconds);
    if (!ok) ++failures;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

QuantumStrategy perturb(const QuantumStrategy& base, Rng& rng, double theta) {
    QuantumStrategy s = base;
    auto small_unitary = [&](int dim) {
        Mat h(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) h(i, j) = cxd(rng.normal(), rng.normal());
        h = 0.5 * (h + h.adjoint());
        h /= std::max(1.0, h.norm());
        Mat u = Mat::Identity(dim, dim), term = Mat::Identity(dim, dim);
        const Mat ih = cxd(0, 1) * theta * h;
        for (int k = 1; k <= 12; ++k) {
            term = term * ih / static_cast<double>(k);
            u += term;
        }
        Eigen::JacobiSVD<Mat> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
        return Mat(svd.matrixU() * svd.matrixV().adjoint());
    };
    if (rng.uniform() < 0.8) {
        const Mat u = small_unitary(s.local_dims[0]);
        for (auto& o : s.observables[0])
            if (o.size()) o = u * o * u.adjoint();
    }
    if (rng.uniform() < 0.8) {
        const Mat v = small_unitary(s.local_dims[1]);
        for (auto& o : s.observables[1])
            if (o.size()) o = v * o * v.adjoint();
    }
    if (rng.uniform() < 0.6) {
        Vec noise(s.state.size());
        for (Eigen::Index i = 0; i < noise.size(); ++i) noise(i) = cxd(rng.normal(), rng.normal());
        s.state += theta * 0.3 * noise;
        s.state.normalize();
    }
    return s;
}

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

const double kOpt = 1.0 / std::sqrt(2.0);

void criterion1() {
    Timer t;
    const QuantumBiasResult r = quantum_bias_bipartite(game_tensor(build_chsh(2)));
    const bool ok = std::abs(r.bias - 0.7071068) <= 1e-6 && t.elapsed() < 1.0;
    report(1, ok, "CHSH quantum bias 0.7071068 +/- 1e-6 in < 1 s", t.elapsed());
}

void criterion2() {
    Timer t;
    bool ok = true;
    {
        Timer each;
        const ClassicalResult r = classical_value(build_chsh(2));
        ok = ok && r.value_exact && *r.value_exact == Frac(3, 4) && each.elapsed() < 1.0;
    }
    for (int n : {3, 5, 7}) {
        Timer each;
        const ClassicalResult r = classical_value(build_odd_cycle(n));
        ok = ok && r.value_exact && *r.value_exact == Frac(2 * n - 1, 2 * n) && each.elapsed() < 1.0;
    }
    {
        Timer each;
        const ClassicalResult r = classical_value(build_ffl());
        ok = ok && r.value_exact && *r.value_exact == Frac(2, 3) && each.elapsed() < 1.0;
    }
    report(2, ok, "classical golden values: CHSH 3/4, odd-cycle 1-1/(2n), FFL 2/3", t.elapsed());
}

void criterion3() {
    Timer t;
    RepetitionSpec spec;
    spec.base = build_chsh(2);
    spec.copies = 2;
    spec.rule = RepetitionRule::XorCombine;
    const QuantumBiasResult q = quantum_bias_bipartite(game_tensor(repeat_game(spec)));
    bool ok = std::abs(q.bias - 0.5) <= 1e-5;

    const ClassicalResult ffl2 = classical_value_repeated(build_ffl(), 2);
    ok = ok && ffl2.value_exact && *ffl2.value_exact == Frac(2, 3);
    ok = ok && t.elapsed() < 30.0;
    report(3, ok, "repetition laws: xor-combined CHSH bias 1/2, FFL and-win 2/3", t.elapsed());
}

void criterion4() {
    Timer t;
    const GameSpec g = build_chsh(2);
    const QuantumStrategy s = optimal_chsh_strategy(2);
    const EpsilonReport rep = certify_chsh_strategy(s, g, kOpt);
    bool ok = rep.epsilon <= 1e-9;
    for (const auto& e : rep.entries) ok = ok && e.lhs <= 1e-8;
    report(4, ok, "exact optimum: every certify LHS <= 1e-8, measured eps <= 1e-9", t.elapsed());
}

void criterion5() {
    Timer t;
    Rng rng(20240801);
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        const int n = 2 + trial % 3;  // dims 2^{n/2} <= 4 <= 8
        const GameSpec g = build_chsh(n);
        const QuantumStrategy s = perturb(optimal_chsh_strategy(n), rng, 0.02 + 0.28 * rng.uniform());
        const double eps = measure_epsilon(s, g, kOpt);
        CertifyOptions opt;
        opt.omega = kOpt;
        for (const auto& e : check_bipartite_bounds(s, n, eps, opt)) ok = ok && e.margin >= -1e-8;
        for (const auto& e : check_anticommutator(s, "ffl", n, 2, eps, opt)) ok = ok && e.margin >= -1e-8;
        for (const auto& e : check_sqrt_bounds(s, eps, 1, opt))
            ok = ok && (e.degenerate || e.margin >= -1e-8);
        for (const auto& e : check_permutation_bounds(s, eps, opt)) ok = ok && e.margin >= -1e-8;
    }
    ok = ok && t.elapsed() < 60.0;
    report(5, ok, "100 perturbed strategies pass all margin checks at measured eps", t.elapsed());
}

void criterion6() {
    Timer t;
    Rng rng(606);
    ClassicalOptions copt;
    copt.mode = "bias";
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const GameSpec g = random_xor_game(rng, 2 + trial % 3, 2 + (trial / 3) % 3);
        const double classical = classical_value(g, copt).value;
        const QuantumBiasResult q = quantum_bias_bipartite(game_tensor(g));
        ok = ok && classical <= q.bias + 1e-7 && q.bias <= 1.0 + 1e-9;
        for (size_t i = 1; i < q.trace.size(); ++i) ok = ok && q.trace[i] >= q.trace[i - 1] - 1e-12;
    }
    report(6, ok, "sandwich on 50 random XOR games; solver monotone per sweep", t.elapsed());
}

void criterion7() {
    Timer t;
    Rng rng(707);
    bool ok = true;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        const int dim = 2 + trial % 3;
        const DefectResult d =
            defect_operator(rng.random_observable(dim), rng.random_observable(dim),
                            trial % 2 == 0 ? 1 : -1);
        ok = ok && d.spectrum.min >= -1e-10;
    }
    const DefectResult plus = defect_operator(pauli_z(), pauli_x(), +1);
    ok = ok && std::abs(plus.spectrum.eigenvalues[0] - 4.0) < 1e-10 &&
         std::abs(plus.spectrum.eigenvalues[1] - 4.0) < 1e-10;
    // The closed-form prediction differs; the report must carry it.
    ok = ok && plus.comparison.max_discrepancy > 3.9 && plus.comparison.predicted[0] < 1e-10;
    report(7, ok, "500 defect operators PSD; plus-variant {4,4} with formula discrepancy recorded",
           t.elapsed());
}

void criterion8() {
    Timer t;
    bool ok = true;
    const Vec phi = bell_chsh2(0);
    const Mat tmat = vectorize(phi, 2, 2);
    ok = ok && std::abs(tmat.norm() - 1.0) <= 1e-10;

    Rng rng(808);
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const Vec psi = rng.random_state(4);
        const Mat m = vectorize(psi, 2, 2);
        // (1) Frobenius norm equality.
        ok = ok && std::abs(m.norm() - psi.norm()) <= 1e-12;
        // (2)/(3) the two action identities.
        const Mat a = rng.random_observable(2), b = rng.random_observable(2);
        ok = ok && (vectorize(apply_local(psi, {2, 2}, 0, a), 2, 2) - a * m).norm() <= 1e-12;
        ok = ok && (vectorize(apply_local(psi, {2, 2}, 1, b), 2, 2) - m * b.transpose()).norm() <= 1e-12;
        // (4) product states vectorize to rank one.
        const Mat prod = vectorize(kron_vec(rng.random_state(2), rng.random_state(2)), 2, 2);
        Eigen::JacobiSVD<Mat> svd(prod);
        ok = ok && svd.singularValues()(1) <= 1e-12;
    }

    for (int trial = 0; trial < 200 && ok; ++trial) {
        Mat tm(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) tm(i, j) = cxd(rng.normal(), rng.normal());
        const Mat a = rng.random_observable(2), b = rng.random_observable(2),
                  c = rng.random_observable(2);
        const auto res = schur3_residuals(tm, a, b, c);
        const double two = (tm * a - b * tm).norm();
        const double cnorm = std::sqrt(hermitian_eigenvalues(c.adjoint() * c).maxCoeff());
        ok = ok && res[0] <= cnorm * two + 1e-12;
    }
    report(8, ok, "intertwiner suite: unit Frobenius norm, Lemma-1 identities, schur3 chain",
           t.elapsed());
}

void criterion9() {
    Timer t;
    bool ok = true;
    for (int n : {2, 3, 4}) {
        const QuantumStrategy s = optimal_chsh_strategy(n);
        const int block = 1 << (n / 2);
        const SchmidtReport rep =
            schmidt_blocks(s.state, s.local_dims[0], s.local_dims[1], block);
        ok = ok && rep.within_block_spread <= 1e-10;
    }
    report(9, ok, "Schmidt coefficients blockwise equal at block size 2^(n/2)", t.elapsed());
}

void criterion10() {
    Timer t;
    // 3-player XOR shape, flattened; the claimed PSD certificates are
    // audited and recorded, never presumed.
    GameSpec g3 = build_xor_game({{"1", "2", "3"}, {"1", "2", "3"}, {"1", "2", "3"}},
                                 std::vector<double>(27, 1.0),
                                 std::vector<double>(27, 1.0 / 27.0));
    const SymmetrizedMatrix sym = flatten_symmetrize(game_tensor(g3));
    const Eigen::Index sz = sym.matrix.rows();
    const auto ref_y = reference_dual_y("3xor", 3, 0, 1, 1.0);
    std::vector<double> y(static_cast<size_t>(sz));
    const Eigen::Index cols = sz - 3;
    for (Eigen::Index i = 0; i < sz; ++i)
        y[static_cast<size_t>(i)] = i < cols ? 1.0 / (2.0 * cols) : 1.0 / (2.0 * 3.0);

    const DualCertificate a = dual_certificate_audit(sym.matrix, y);
    const DualCertificate b = dual_certificate_audit(sym.matrix, y);
    bool ok = a.min_eig == b.min_eig;  // bit-identical across runs
    const double oracle = rayleigh_min_oracle(a.op);
    ok = ok && std::abs(oracle - a.min_eig) <= 1e-6;
    ok = ok && ref_y.size() == 27;  // the closed-form reference vector rides along
    std::printf("  audit outcome: 3xor flattened min_eig=%.3e psd=%s (recorded, not presumed)\n",
                a.min_eig, a.psd ? "yes" : "no");

    // A 2-player audit against the per-player closed-form block values.
    const SymmetrizedMatrix chsh_sym = symmetrize(game_tensor(build_chsh(3)));
    const Eigen::Index m = chsh_sym.matrix.rows();
    std::vector<double> y2(static_cast<size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i)
        y2[static_cast<size_t>(i)] =
            i < m - 3 ? kOpt / (2.0 * 3.0 * 2.0) : kOpt / (2.0 * 3.0);
    const DualCertificate c = dual_certificate_audit(chsh_sym.matrix, y2);
    const DualCertificate c2 = dual_certificate_audit(chsh_sym.matrix, y2);
    ok = ok && c.min_eig == c2.min_eig;
    ok = ok && std::abs(rayleigh_min_oracle(c.op) - c.min_eig) <= 1e-6;
    std::printf("  audit outcome: CHSH(3) reference blocks min_eig=%.3e psd=%s\n", c.min_eig,
                c.psd ? "yes" : "no");

    // 4-player outcome, same glue, recorded alongside.
    GameSpec g4 = build_xor_game(
        {{"1", "2"}, {"1", "2"}, {"1", "2"}, {"1", "2"}},
        std::vector<double>(16, 1.0), std::vector<double>(16, 1.0 / 16.0));
    const SymmetrizedMatrix sym4 = flatten_symmetrize(game_tensor(g4));
    const Eigen::Index s4 = sym4.matrix.rows();
    std::vector<double> y4(static_cast<size_t>(s4));
    for (Eigen::Index i = 0; i < s4; ++i)
        y4[static_cast<size_t>(i)] = i < s4 - 2 ? 1.0 / (2.0 * (s4 - 2)) : 1.0 / (2.0 * 2.0);
    const DualCertificate d4 = dual_certificate_audit(sym4.matrix, y4);
    ok = ok && std::abs(rayleigh_min_oracle(d4.op) - d4.min_eig) <= 1e-6;
    std::printf("  audit outcome: 4xor flattened min_eig=%.3e psd=%s\n", d4.min_eig,
                d4.psd ? "yes" : "no");
    report(10, ok, "dual-certificate audit deterministic and oracle-consistent", t.elapsed());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures == 0) std::printf("all acceptance criteria passed\n");
    else std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
