#include "ngl/strategies.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace ngl {

void QuantumStrategy::validate(double obs_tol, double state_tol) const {
    long long total = 1;
    for (int d : local_dims) total *= d;
    if (state.size() != total) throw std::invalid_argument("QuantumStrategy: state length != product of dims");
    if (std::abs(state.norm() - 1.0) > state_tol)
        throw std::invalid_argument("QuantumStrategy: state is not normalized");
    if (observables.size() != local_dims.size())
        throw std::invalid_argument("QuantumStrategy: observables per player mismatch");
    for (size_t p = 0; p < observables.size(); ++p)
        for (const Mat& o : observables[p]) {
            if (o.size() == 0) continue;
            if (o.rows() != local_dims[p] || o.cols() != local_dims[p])
                throw std::invalid_argument("QuantumStrategy: observable dimension mismatch");
            if (observable_defect(o) > obs_tol)
                throw std::invalid_argument("QuantumStrategy: observable fails O=O†, O²=I check");
        }
}

Vec bell_chsh2(int which) {
    if (which < 0 || which > 3) throw std::invalid_argument("bell_chsh2: selector must be 0..3");
    Vec phi = Vec::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);  // (|00⟩+|11⟩)/√2
    if (which == 0) return phi;
    const Mat op = which == 1 ? pauli_x() : which == 2 ? pauli_z() : Mat(pauli_x() * pauli_z());
    return apply_local(phi, {2, 2}, 0, op);
}

std::vector<Mat> anticommuting_family(int n) {
    if (n < 1) throw std::invalid_argument("anticommuting_family: n must be >= 1");
    const int m = n / 2 >= 1 ? n / 2 : 1;
    const int dim = 1 << m;
    std::vector<Mat> fam;
    fam.reserve(static_cast<size_t>(n));
    auto word = [&](int y_count, const Mat& head) {
        Mat w = Mat::Identity(1, 1);
        for (int q = 0; q < m; ++q) {
            if (q < y_count) w = kron(w, pauli_y());
            else if (q == y_count) w = kron(w, head);
            else w = kron(w, Mat::Identity(2, 2));
        }
        return w;
    };
    for (int k = 0; k < n; ++k) {
        const int pair = k / 2;
        if (pair < m)
            fam.push_back(word(pair, k % 2 == 0 ? pauli_z() : pauli_x()));
        else
            fam.push_back(word(m, Mat::Identity(1, 1)));  // Y⊗…⊗Y closes the odd family
    }
    for (auto& a : fam)
        if (a.rows() != dim) throw std::logic_error("anticommuting_family: bad dimension");
    return fam;
}

void derived_b_observables(const Mat& a_j, const Mat& a_k, Mat& b_jk, Mat& b_kj, bool* ok, double tol) {
    if (a_j.rows() != a_k.rows() || a_j.cols() != a_k.cols())
        throw std::invalid_argument("derived_b_observables: dimension mismatch");
    const double inv = 1.0 / std::sqrt(2.0);
    b_jk = (inv * (a_j + a_k)).transpose();
    b_kj = (inv * (a_j - a_k)).transpose();
    if (ok) {
        const Mat id = Mat::Identity(a_j.rows(), a_j.cols());
        *ok = (b_jk * b_jk - id).norm() <= tol && (b_kj * b_kj - id).norm() <= tol;
    }
}

QuantumStrategy optimal_chsh_strategy(int n) {
    if (n < 2) throw std::invalid_argument("optimal_chsh_strategy: n must be >= 2");
    const auto alice = anticommuting_family(n);
    const int d = static_cast<int>(alice[0].rows());

    QuantumStrategy s;
    s.local_dims = {d, d};
    s.state = Vec::Zero(static_cast<long long>(d) * d);
    for (int i = 0; i < d; ++i) s.state(static_cast<long long>(i) * d + i) = 1.0 / std::sqrt(static_cast<double>(d));

    s.observables.resize(2);
    s.observables[0] = alice;
    const auto pairs = distinct_tuples(n, 2);
    s.observables[1].resize(pairs.size());
    for (size_t b = 0; b < pairs.size(); ++b) {
        const int i = pairs[b][0], j = pairs[b][1];
        Mat bp, bm;
        if (i < j) {
            derived_b_observables(alice[static_cast<size_t>(i)], alice[static_cast<size_t>(j)], bp, bm);
            s.observables[1][b] = bp;
        } else {
            derived_b_observables(alice[static_cast<size_t>(j)], alice[static_cast<size_t>(i)], bp, bm);
            s.observables[1][b] = bm;
        }
    }
    return s;
}

static cxd contract_tuple(const QuantumStrategy& s, const std::vector<const Mat*>& ops) {
    const Vec acted = apply_product(s.state, s.local_dims, ops);
    return s.state.dot(acted);  // Eigen's dot conjugates the left argument
}

double eval_bias(const QuantumStrategy& strategy, const GameSpec& game) {
    if (!game.is_xor()) throw std::domain_error("eval_bias: XOR-type games only");
    const GameTensor tensor = game_tensor(game);
    const auto counts = game.question_counts();
    if (static_cast<int>(strategy.observables.size()) != game.players)
        throw std::invalid_argument("eval_bias: player count mismatch");

    cxd acc = 0.0;
    const long long cells = tensor.cells();
    std::vector<const Mat*> ops(static_cast<size_t>(game.players));
    for (long long flat = 0; flat < cells; ++flat) {
        const double g = tensor.entries[static_cast<size_t>(flat)];
        if (g == 0.0) continue;
        const auto q = game.flat_to_tuple(flat);
        for (int p = 0; p < game.players; ++p) {
            if (!strategy.has_obs(p, q[static_cast<size_t>(p)]))
                throw std::invalid_argument("eval_bias: missing observable for player " + std::to_string(p + 1) +
                                            " question '" + game.question_sets[static_cast<size_t>(p)][static_cast<size_t>(q[static_cast<size_t>(p)])] + "'");
            ops[static_cast<size_t>(p)] = &strategy.obs(p, q[static_cast<size_t>(p)]);
        }
        acc += g * contract_tuple(strategy, ops);
    }
    if (std::abs(acc.imag()) > 1e-10)
        throw std::runtime_error("eval_bias: non-real contraction (imaginary residue " + std::to_string(acc.imag()) + ")");
    return acc.real();
}

namespace {

// Projector of player p onto answer index `answer` for question q: either
// (I ± O)/2 of a single ±1 observable (binary answers) or the tensor product
// of per-copy projectors when the strategy carries factor observables.
Mat answer_projector(const QuantumStrategy& s, int player, long long question, long long answer,
                     int answer_count) {
    const size_t p = static_cast<size_t>(player);
    if (answer_count == 2) {
        if (!s.has_obs(player, question))
            throw std::invalid_argument("eval_win_prob: missing observable");
        const Mat& o = s.obs(player, question);
        const Mat id = Mat::Identity(o.rows(), o.cols());
        return 0.5 * (id + (answer == 0 ? 1.0 : -1.0) * o);
    }
    if (p < s.obs_factors.size() &&
        static_cast<size_t>(question) < s.obs_factors[p].size() &&
        !s.obs_factors[p][static_cast<size_t>(question)].empty()) {
        const auto& factors = s.obs_factors[p][static_cast<size_t>(question)];
        const int k = static_cast<int>(factors.size());
        if ((1LL << k) != answer_count)
            throw std::domain_error("eval_win_prob: answer alphabet does not match the copy count");
        // Answer index decodes copy-major into per-copy bits.
        Mat proj = Mat::Identity(1, 1);
        for (int c = 0; c < k; ++c) {
            const int bit = static_cast<int>((answer >> (k - 1 - c)) & 1);
            const Mat& o = factors[static_cast<size_t>(c)];
            const Mat id = Mat::Identity(o.rows(), o.cols());
            proj = kron(proj, Mat(0.5 * (id + (bit == 0 ? 1.0 : -1.0) * o)));
        }
        return proj;
    }
    throw std::domain_error("eval_win_prob: predicate games need binary answers per copy");
}

}  // namespace

double eval_win_prob(const QuantumStrategy& strategy, const GameSpec& game) {
    if (game.is_xor()) return (eval_bias(strategy, game) + 1.0) / 2.0;

    // Born rule through projective decompositions; answer bit a ↔ (−1)^a.
    const auto acounts = game.answer_counts();
    const long long qcells = game.question_cells();
    const long long acells = game.answer_cells();

    double total = 0.0;
    std::vector<Mat> projectors(static_cast<size_t>(game.players));
    std::vector<const Mat*> ops(static_cast<size_t>(game.players));
    for (long long qf = 0; qf < qcells; ++qf) {
        const double pi = game.prob(qf);
        if (pi == 0.0) continue;
        const auto q = game.flat_to_tuple(qf);
        for (long long af = 0; af < acells; ++af) {
            if (!game.win(qf, af)) continue;
            long long rem = af;
            for (int p = game.players - 1; p >= 0; --p) {
                const long long a = rem % acounts[static_cast<size_t>(p)];
                rem /= acounts[static_cast<size_t>(p)];
                projectors[static_cast<size_t>(p)] =
                    answer_projector(strategy, p, q[static_cast<size_t>(p)], a,
                                     acounts[static_cast<size_t>(p)]);
                ops[static_cast<size_t>(p)] = &projectors[static_cast<size_t>(p)];
            }
            const cxd prob = contract_tuple(strategy, ops);
            total += pi * prob.real();
        }
    }
    return total;
}

Mat vectorize(const Vec& state, int dim_a, int dim_b) {
    if (static_cast<long long>(dim_a) * dim_b != state.size())
        throw std::invalid_argument("vectorize: split does not match state length");
    Mat m(dim_a, dim_b);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_b; ++j) m(i, j) = state(static_cast<long long>(i) * dim_b + j);
    return m;
}

SchmidtReport schmidt_blocks(const Vec& state, int dim_a, int dim_b, int block_size) {
    if (block_size < 1) throw std::invalid_argument("schmidt_blocks: block size must be >= 1");
    const Mat m = vectorize(state, dim_a, dim_b);
    Eigen::JacobiSVD<Mat> svd(m);
    SchmidtReport rep;
    rep.block_size = block_size;
    const auto& sv = svd.singularValues();
    rep.coefficients.assign(sv.data(), sv.data() + sv.size());
    rep.partial_block = (sv.size() % block_size) != 0;
    for (Eigen::Index start = 0; start < sv.size(); start += block_size) {
        const Eigen::Index end = std::min<Eigen::Index>(start + block_size, sv.size());
        const double spread = sv(start) - sv(end - 1);  // singular values are sorted descending
        if (spread > rep.within_block_spread) rep.within_block_spread = spread;
    }
    return rep;
}

AnnotatedState nplayer_bell(const std::vector<std::string>& pauli_word, int players) {
    if (players < 2) throw std::invalid_argument("nplayer_bell: need at least 2 players");
    if (static_cast<int>(pauli_word.size()) != players)
        throw std::invalid_argument("nplayer_bell: word length != players");
    for (const auto& w : pauli_word)
        if (w != "I" && w != "X" && w != "Z" && w != "ZX")
            throw std::invalid_argument("nplayer_bell: word letters must be I, X, Z or ZX");

    const long long dim = 1LL << players;
    const double norm = 1.0 / std::sqrt(static_cast<double>(players));

    AnnotatedState out;
    out.state = Vec::Zero(dim);
    out.annotations.resize(static_cast<size_t>(players));
    // |e_j⟩: qubit j set, all others clear (one-excitation basis).
    for (int j = 0; j < players; ++j) {
        auto& ann = out.annotations[static_cast<size_t>(j)];
        ann.term = j;
        long long idx = 0;
        double amp = norm;
        for (int p = 0; p < players; ++p) {
            int bit = (p == j) ? 1 : 0;
            const std::string& w = pauli_word[static_cast<size_t>(p)];
            // Letters act as σ_z first, then σ_x for the "ZX" word (σ_xσ_z order).
            if (w == "Z" || w == "ZX") {
                if (bit == 1) { amp = -amp; ann.sign = -ann.sign; }
            }
            if (w == "X" || w == "ZX") {
                bit ^= 1;
                ann.tilded = true;
            }
            idx = (idx << 1) | bit;
        }
        out.state(idx) += amp;
    }
    return out;
}

}  // namespace ngl
