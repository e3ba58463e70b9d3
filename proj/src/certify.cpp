#include "ngl/certify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ngl {

bool EpsilonReport::all_pass() const {
    for (const auto& e : entries)
        if (!e.degenerate && !e.pass) return false;
    return true;
}

void EpsilonReport::sort_entries() {
    std::sort(entries.begin(), entries.end(),
              [](const EpsilonEntry& a, const EpsilonEntry& b) { return a.bound_id < b.bound_id; });
}

double measure_epsilon_from_bias(double strategy_bias, double optimal_bias) {
    if (optimal_bias <= 0.0) throw std::invalid_argument("measure_epsilon: optimal bias must be positive");
    const double eps = 1.0 - strategy_bias / optimal_bias;
    return eps > 0.0 ? eps : 0.0;
}

double measure_epsilon(const QuantumStrategy& strategy, const GameSpec& game, double optimal_bias) {
    return measure_epsilon_from_bias(eval_bias(strategy, game), optimal_bias);
}

int chsh_questions_from_strategy(const QuantumStrategy& s) {
    if (s.observables.empty()) throw std::invalid_argument("certify: strategy has no observables");
    return static_cast<int>(s.observables[0].size());
}

namespace {

EpsilonEntry make_entry(std::string id, double lhs, double rhs, double tol, bool degenerate = false,
                        std::string note = {}) {
    EpsilonEntry e;
    e.bound_id = std::move(id);
    e.lhs = lhs;
    e.rhs = rhs;
    e.margin = rhs - lhs;
    e.pass = degenerate || e.margin >= -tol;
    e.degenerate = degenerate;
    e.note = std::move(note);
    return e;
}

// ‖(⊗left)ψ − (⊗right)ψ‖ with nullptr slots read as identity.
double action_diff_norm(const QuantumStrategy& s, const std::vector<const Mat*>& left,
                        const std::vector<const Mat*>& right) {
    const Vec l = apply_product(s.state, s.local_dims, left);
    const Vec r = apply_product(s.state, s.local_dims, right);
    return (l - r).norm();
}

double action_norm(const QuantumStrategy& s, const std::vector<const Mat*>& ops) {
    return apply_product(s.state, s.local_dims, ops).norm();
}

const Mat& require_obs(const QuantumStrategy& s, int player, long long q, const char* what) {
    if (!s.has_obs(player, q))
        throw std::invalid_argument(std::string("certify: missing observable for ") + what);
    return s.obs(player, q);
}

const Mat& pair_obs(const QuantumStrategy& s, int n, int i, int j) {
    return require_obs(s, 1, distinct_tuple_index(n, {i, j}), "player 2 pair question");
}

int players_of(const QuantumStrategy& s) { return static_cast<int>(s.local_dims.size()); }

double falling_product(int n, int players) {
    double f = 1.0;
    for (int j = 1; j <= players - 1; ++j) f *= (n - j);
    return f;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double parity_factor(int n, int players) {
    const double exponent = players % 2 == 0 ? players / 2.0 + 5.0 : std::floor(players / 2.0) + 5.0;
    return std::pow(static_cast<double>(n), exponent);
}

// Ordered product A_{i_1}^{j_1}…A_{i_n}^{j_n} of player-1 observables.
Mat exponent_product(const QuantumStrategy& s, const std::vector<int>& exps) {
    const int d = s.local_dims[0];
    Mat m = Mat::Identity(d, d);
    for (size_t i = 0; i < exps.size(); ++i)
        if (exps[i]) m = m * require_obs(s, 0, static_cast<long long>(i), "player 1 question");
    return m;
}

int swap_sign(const std::vector<int>& exps, size_t p) {
    int cnt = 0;
    for (size_t i = p + 1; i < exps.size(); ++i) cnt += exps[i];
    return cnt % 2 == 0 ? 1 : -1;
}

std::vector<std::vector<int>> sample_exponents(int n, const CertifyOptions& opt) {
    std::vector<std::vector<int>> out;
    if (n <= 20 && (1LL << n) <= opt.sample_limit) {
        for (long long mask = 0; mask < (1LL << n); ++mask) {
            std::vector<int> e(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)] = static_cast<int>((mask >> i) & 1);
            out.push_back(std::move(e));
        }
    } else {
        Rng rng(opt.seed);
        std::set<std::vector<int>> seen;
        while (static_cast<int>(seen.size()) < opt.sample_limit) {
            std::vector<int> e(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)] = rng.uniform_int(0, 1);
            seen.insert(std::move(e));
        }
        out.assign(seen.begin(), seen.end());
    }
    return out;
}

}  // namespace

std::vector<EpsilonEntry> check_bipartite_bounds(const QuantumStrategy& s, int n, double eps,
                                                 const CertifyOptions& opt) {
    const int np = players_of(s);
    if (np < 2) throw std::invalid_argument("check_bipartite_bounds: need two players");
    const double inv = 1.0 / std::sqrt(2.0);
    double sum_ab = 0.0, sum_ba = 0.0;
    std::vector<const Mat*> left(static_cast<size_t>(np), nullptr), right(static_cast<size_t>(np), nullptr);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Mat& ai = require_obs(s, 0, i, "player 1 question");
            const Mat& aj = require_obs(s, 0, j, "player 1 question");
            const Mat& bij = pair_obs(s, n, i, j);
            const Mat& bji = pair_obs(s, n, j, i);
            const Mat plus = inv * (ai + aj), minus = inv * (ai - aj);
            const Mat bplus = inv * (bij + bji), bminus = inv * (bij - bji);

            left[0] = &plus; right[0] = nullptr; right[1] = &bij;
            double d = action_diff_norm(s, left, right);
            sum_ab += d * d;
            left[0] = &minus; right[1] = &bji;
            d = action_diff_norm(s, left, right);
            sum_ab += d * d;

            left[0] = &ai; right[1] = &bplus;
            d = action_diff_norm(s, left, right);
            sum_ba += d * d;
            left[0] = &aj; right[1] = &bminus;
            d = action_diff_norm(s, left, right);
            sum_ba += d * d;
        }
    const double rhs = 2.0 * n * (n - 1.0) * eps;
    return {make_entry("thm1_ab_sum", sum_ab, rhs, opt.tol),
            make_entry("thm1_ba_sum", sum_ba, rhs, opt.tol)};
}

std::vector<EpsilonEntry> check_nxor_bounds(const QuantumStrategy& s, int players, int n,
                                            double eps, const CertifyOptions& opt) {
    if (players < 2) throw std::invalid_argument("check_nxor_bounds: players must be >= 2");
    if (players_of(s) < players)
        throw std::invalid_argument("check_nxor_bounds: strategy has too few players");
    if (static_cast<int>(s.observables.size()) < players)
        throw std::invalid_argument("check_nxor_bounds: arity mismatch");
    const double inv = 1.0 / std::sqrt(2.0);
    const double rhs = factorial(players) * n * falling_product(n, players) * eps;
    const int np = players_of(s);

    // Tuples (i_1..i_N) of distinct indices with i_1 < i_2; the permutation
    // sets come from S_N programmatically rather than from transcribed tables.
    std::vector<std::vector<int>> tuples;
    for (const auto& t : distinct_tuples(n, players))
        if (t[0] < t[1]) tuples.push_back(t);

    std::vector<EpsilonEntry> out;
    std::vector<const Mat*> left(static_cast<size_t>(np), nullptr), right(static_cast<size_t>(np), nullptr);

    auto level_obs = [&](int level, const std::vector<int>& idx) -> const Mat& {
        // level k: player k (1-based), indexed by the leading k-tuple.
        std::vector<int> key(idx.begin(), idx.begin() + level);
        return require_obs(s, level - 1, distinct_tuple_index(n, key), "interchange observable");
    };

    for (int level = 1; level <= players - 1; ++level) {
        double sum_plus = 0.0, sum_minus = 0.0;
        for (const auto& t : tuples) {
            std::vector<int> swapped = t;
            std::swap(swapped[0], swapped[1]);
            const Mat& o_t = level_obs(level, t);
            const Mat& o_s = level_obs(level, swapped);
            const Mat plus = inv * (o_t + o_s), minus = inv * (o_t - o_s);
            const Mat& up_plus = level_obs(level + 1, t);
            const Mat& up_minus = level_obs(level + 1, swapped);

            std::fill(left.begin(), left.end(), nullptr);
            std::fill(right.begin(), right.end(), nullptr);
            left[static_cast<size_t>(level - 1)] = &plus;
            right[static_cast<size_t>(level)] = &up_plus;
            double d = action_diff_norm(s, left, right);
            sum_plus += d * d;

            left[static_cast<size_t>(level - 1)] = &minus;
            right[static_cast<size_t>(level)] = &up_minus;
            d = action_diff_norm(s, left, right);
            sum_minus += d * d;
        }
        out.push_back(make_entry("nxor_level" + std::to_string(level) + "_plus", sum_plus, rhs, opt.tol));
        out.push_back(make_entry("nxor_level" + std::to_string(level) + "_minus", sum_minus, rhs, opt.tol));
    }

    // Interchange of each higher-arity observable directly against the
    // first player's plus/minus combination.
    for (int level = 2; level <= players; ++level) {
        double sum_plus = 0.0, sum_minus = 0.0;
        for (const auto& t : tuples) {
            std::vector<int> swapped = t;
            std::swap(swapped[0], swapped[1]);
            const Mat& a1 = require_obs(s, 0, t[0], "player 1 question");
            const Mat& a2 = require_obs(s, 0, t[1], "player 1 question");
            const Mat plus = inv * (a1 + a2), minus = inv * (a1 - a2);

            std::fill(left.begin(), left.end(), nullptr);
            std::fill(right.begin(), right.end(), nullptr);
            left[static_cast<size_t>(level - 1)] = &level_obs(level, t);
            right[0] = &plus;
            double d = action_diff_norm(s, left, right);
            sum_plus += d * d;

            left[static_cast<size_t>(level - 1)] = &level_obs(level, swapped);
            right[0] = &minus;
            d = action_diff_norm(s, left, right);
            sum_minus += d * d;
        }
        out.push_back(
            make_entry("nxor_level" + std::to_string(level) + "_to1_plus", sum_plus, rhs, opt.tol));
        out.push_back(
            make_entry("nxor_level" + std::to_string(level) + "_to1_minus", sum_minus, rhs, opt.tol));
    }

    // Closing relations: the S_N-symmetrized (and sign-weighted) top-level
    // sums against the first (second) player-1 observable.
    const double inv_fact = 1.0 / std::sqrt(factorial(players));
    auto perm_parity = [](const std::vector<int>& perm) {
        int inv_count = 0;
        for (size_t a = 0; a < perm.size(); ++a)
            for (size_t b = a + 1; b < perm.size(); ++b)
                if (perm[a] > perm[b]) ++inv_count;
        return inv_count % 2 == 0 ? 1 : -1;
    };
    const auto perms = distinct_tuples(players, players);  // S_N as index arrangements

    double sum_sym = 0.0, sum_signed = 0.0;
    for (const auto& t : tuples) {
        const int d_top = s.local_dims[static_cast<size_t>(players - 1)];
        Mat sym = Mat::Zero(d_top, d_top), sgn = Mat::Zero(d_top, d_top);
        for (const auto& perm : perms) {
            std::vector<int> arranged(static_cast<size_t>(players));
            for (int a = 0; a < players; ++a) arranged[static_cast<size_t>(a)] = t[static_cast<size_t>(perm[static_cast<size_t>(a)])];
            const Mat& o = level_obs(players, arranged);
            sym += o;
            sgn += static_cast<double>(perm_parity(perm)) * o;
        }
        sym *= inv_fact;
        sgn *= inv_fact;

        std::fill(left.begin(), left.end(), nullptr);
        std::fill(right.begin(), right.end(), nullptr);
        left[static_cast<size_t>(players - 1)] = &sym;
        const Mat& a1 = require_obs(s, 0, t[0], "player 1 question");
        right[0] = &a1;
        double d = action_diff_norm(s, left, right);
        sum_sym += d * d;

        left[static_cast<size_t>(players - 1)] = &sgn;
        const Mat& a2 = require_obs(s, 0, t[1], "player 1 question");
        right[0] = &a2;
        d = action_diff_norm(s, left, right);
        sum_signed += d * d;
    }
    out.push_back(make_entry("nxor_close_sym", sum_sym, rhs, opt.tol));
    out.push_back(make_entry("nxor_close_signed", sum_signed, rhs, opt.tol));
    return out;
}

std::vector<EpsilonEntry> check_anticommutator(const QuantumStrategy& s, const std::string& family,
                                               int n, int players, double eps,
                                               const CertifyOptions& opt) {
    if (family != "ffl" && family != "nxor")
        throw std::invalid_argument("check_anticommutator: family must be ffl or nxor");
    const int np = players_of(s);
    double sum = 0.0;
    std::vector<const Mat*> ops(static_cast<size_t>(np), nullptr);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Mat& ai = require_obs(s, 0, i, "player 1 question");
            const Mat& aj = require_obs(s, 0, j, "player 1 question");
            const Mat anti = 0.5 * (ai * aj + aj * ai);
            ops[0] = &anti;
            const double d = action_norm(s, ops);
            sum += d * d;
        }
    double rhs;
    std::string id;
    if (family == "ffl") {
        rhs = 2.0 * (7.0 / 3.0) * (7.0 / 3.0) * n * (n - 1.0) * eps;
        id = "anticomm_ffl";
    } else {
        rhs = opt.c1 * n * falling_product(n, players) * eps;
        id = "anticomm_nxor_c1";
    }
    return {make_entry(std::move(id), sum, rhs, opt.tol)};
}

std::vector<EpsilonEntry> check_sqrt_bounds(const QuantumStrategy& s, double eps, int reps,
                                            const CertifyOptions& opt) {
    const int np = players_of(s);
    std::vector<EpsilonEntry> out;
    std::vector<const Mat*> left(static_cast<size_t>(np), nullptr), right(static_cast<size_t>(np), nullptr);

    if (reps <= 1) {
        const int n = chsh_questions_from_strategy(s);
        double lhs_plus = 0.0, lhs_minus = 0.0;
        bool degen_plus = false, degen_minus = false;
        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l) {
                const Mat& bkl = pair_obs(s, n, k, l);
                const Mat& blk = pair_obs(s, n, l, k);
                bool dg = false;
                const Mat sp = sign_op_impl(bkl + blk, 1e-10, &dg);
                if (dg) { degen_plus = true; }
                else {
                    left[0] = &require_obs(s, 0, k, "player 1 question");
                    left[1] = nullptr;
                    std::fill(right.begin(), right.end(), nullptr);
                    right[1] = &sp;
                    lhs_plus = std::max(lhs_plus, action_diff_norm(s, left, right));
                }
                dg = false;
                const Mat sm = sign_op_impl(bkl - blk, 1e-10, &dg);
                if (dg) { degen_minus = true; }
                else {
                    left[0] = &require_obs(s, 0, l, "player 1 question");
                    std::fill(right.begin(), right.end(), nullptr);
                    right[1] = &sm;
                    lhs_minus = std::max(lhs_minus, action_diff_norm(s, left, right));
                }
            }
        const double rhs = 17.0 * std::sqrt(n * eps);
        out.push_back(make_entry("sqrt4b_plus", lhs_plus, rhs, opt.tol, degen_plus,
                                 degen_plus ? "singular |B_kl+B_lk| on some pair" : ""));
        out.push_back(make_entry("sqrt4b_minus", lhs_minus, rhs, opt.tol, degen_minus,
                                 degen_minus ? "singular |B_kl-B_lk| on some pair" : ""));
        return out;
    }

    // ∧-forms on a repeated strategy: question indices are rep-tuples of base
    // pair indices. Diagonal rep-tuples (same base pair each copy) sample the
    // reference combinations.
    // Recover the base question count from nq1 = base^reps.
    const long long nq1 = static_cast<long long>(s.observables[0].size());
    int base_n = static_cast<int>(std::llround(std::pow(static_cast<double>(nq1), 1.0 / reps)));
    while (static_cast<long long>(std::pow(static_cast<double>(base_n + 1), reps)) <= nq1) ++base_n;
    const long long base_pairs = distinct_tuple_count(base_n, 2);

    auto rep_index = [&](long long base_idx, long long count) {
        long long idx = 0;
        for (int c = 0; c < reps; ++c) idx = idx * count + base_idx;
        return idx;
    };

    double lhs = 0.0;
    double lhs_sum = 0.0;
    bool degen = false;
    int terms = 0;
    for (int k = 0; k < base_n; ++k)
        for (int l = k + 1; l < base_n; ++l) {
            const long long kl = distinct_tuple_index(base_n, {k, l});
            const long long lk = distinct_tuple_index(base_n, {l, k});
            if (!s.has_obs(1, rep_index(kl, base_pairs)) || !s.has_obs(1, rep_index(lk, base_pairs)))
                continue;
            const Mat& bkl = s.obs(1, rep_index(kl, base_pairs));
            const Mat& blk = s.obs(1, rep_index(lk, base_pairs));
            bool dg = false;
            const Mat sp = sign_op_impl(bkl + blk, 1e-10, &dg);
            if (dg) { degen = true; continue; }
            left.assign(static_cast<size_t>(np), nullptr);
            right.assign(static_cast<size_t>(np), nullptr);
            left[0] = &s.obs(0, rep_index(k, base_n));
            right[1] = &sp;
            const double d = action_diff_norm(s, left, right);
            lhs = std::max(lhs, d);
            lhs_sum += d;
            ++terms;
        }
    const double np_factor = static_cast<double>(reps);
    out.push_back(make_entry("sqrt5b_wedge", lhs, 20.0 * std::sqrt(np_factor * eps), opt.tol, degen,
                             degen ? "singular wedge combination" : ""));
    out.push_back(make_entry("sqrt5bstar_wedge", lhs, 18.0 * std::sqrt(np_factor * eps), opt.tol, degen,
                             "2XOR wedge variant"));
    out.push_back(make_entry("sqrt5bstars_sum", lhs_sum, 20.0 * np_factor * std::sqrt(np_factor * eps),
                             opt.tol, degen, terms ? "" : "no nondegenerate terms"));
    return out;
}

std::vector<EpsilonEntry> check_permutation_bounds(const QuantumStrategy& s, double eps,
                                                   const CertifyOptions& opt) {
    const int n = chsh_questions_from_strategy(s);
    const int np = players_of(s);
    const auto samples = sample_exponents(n, opt);

    double lhs = 0.0;
    std::vector<const Mat*> left(static_cast<size_t>(np), nullptr), right(static_cast<size_t>(np), nullptr);
    for (const auto& exps : samples)
        for (int p = 0; p < n; ++p) {
            std::vector<int> flipped = exps;
            flipped[static_cast<size_t>(p)] ^= 1;
            const Mat prod = exponent_product(s, exps) * require_obs(s, 0, p, "player 1 question");
            const Mat target = static_cast<double>(swap_sign(exps, static_cast<size_t>(p))) *
                               exponent_product(s, flipped);
            const Mat diff = prod - target;
            left[0] = &diff;
            lhs = std::max(lhs, action_norm(s, left));
        }

    std::vector<EpsilonEntry> out;
    out.push_back(make_entry("perm_lemma5", lhs, (100.0 / 9.0) * n * n * std::sqrt(eps), opt.tol));
    if (np >= 3) {
        const double rhs5s = np * std::pow(static_cast<double>(n), np + eps) * std::pow(opt.omega, 3);
        out.push_back(make_entry("perm_lemma5star", lhs, rhs5s, opt.tol));
        const double npe = std::pow(static_cast<double>(n), np + eps);
        const double rhsw = npe + 50.0 * npe / std::sqrt(std::pow(static_cast<double>(n), np - 1)) * opt.omega;
        out.push_back(make_entry("perm_wedge", lhs, rhsw, opt.tol));
    }
    return out;
}

std::vector<EpsilonEntry> check_second_bound(const QuantumStrategy& s, const std::string& family,
                                             double eps, const CertifyOptions& opt) {
    const int n = chsh_questions_from_strategy(s);
    const int np = players_of(s);
    const bool squared = family != "ffl";
    const auto samples = sample_exponents(n, opt);

    double lhs = 0.0;
    std::vector<const Mat*> left(static_cast<size_t>(np), nullptr);
    for (const auto& exps : samples)
        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l) {
                const Mat prod = exponent_product(s, exps);
                const Mat& bkl = pair_obs(s, n, k, l);
                std::vector<int> fk = exps, fl = exps;
                fk[static_cast<size_t>(k)] ^= 1;
                fl[static_cast<size_t>(l)] ^= 1;
                const Mat flip_sum =
                    static_cast<double>(swap_sign(exps, static_cast<size_t>(k))) * exponent_product(s, fk) +
                    static_cast<double>(swap_sign(exps, static_cast<size_t>(l))) * exponent_product(s, fl);

                std::fill(left.begin(), left.end(), nullptr);
                left[0] = &prod;
                left[1] = &bkl;
                const Vec lvec = apply_product(s.state, s.local_dims, left);
                std::fill(left.begin(), left.end(), nullptr);
                left[0] = &flip_sum;
                const Vec rvec = opt.omega * apply_product(s.state, s.local_dims, left);
                const double d = (lvec - rvec).norm();
                lhs = std::max(lhs, squared ? d * d : d);
            }

    double rhs;
    std::string id = "secondbound_" + family;
    const double sq = std::sqrt(eps);
    if (family == "ffl") rhs = (8200.0 * std::sqrt(2.0) / 27.0) * n * n * sq;
    else if (family == "3xor") rhs = 1000.0 * std::pow(n, 3) * sq;
    else if (family == "4xor") rhs = 100000.0 * std::pow(n, 4) * sq;
    else if (family == "5xor") rhs = 1000.0 * std::sqrt(2.0) * std::pow(n, 5) * sq;
    else if (family == "nxor")
        rhs = factorial(np) * std::pow(n, np) * sq * parity_factor(n, np);
    else if (family == "fr_wedge")
        rhs = 130.0 * factorial(np) * std::pow(n, np) * sq * parity_factor(n, np);
    else throw std::invalid_argument("check_second_bound: unknown family '" + family + "'");
    return {make_entry(std::move(id), lhs, rhs, opt.tol, false,
                       "omega=" + std::to_string(opt.omega))};
}

std::vector<EpsilonEntry> check_frobenius_intertwiner(const QuantumStrategy& s,
                                                      std::optional<Mat> t_opt, double eps,
                                                      const CertifyOptions& opt,
                                                      const std::vector<Mat>* tilde) {
    const int n = chsh_questions_from_strategy(s);
    const int np = players_of(s);
    Mat t;
    if (t_opt) {
        t = *t_opt;
    } else {
        long long rest = 1;
        for (int p = 1; p < np; ++p) rest *= s.local_dims[static_cast<size_t>(p)];
        t = vectorize(s.state, s.local_dims[0], static_cast<int>(rest));
    }
    const double tnorm = t.norm();
    const double inv = 1.0 / std::sqrt(2.0);

    std::vector<EpsilonEntry> out;
    double aggregate = 0.0;
    for (int i = 0; i < n; ++i) {
        const Mat& ai = require_obs(s, 0, i, "player 1 question");
        Mat partner;
        if (tilde != nullptr) {
            if (static_cast<int>(tilde->size()) <= i)
                throw std::invalid_argument("check_frobenius_intertwiner: tilde list too short");
            partner = (*tilde)[static_cast<size_t>(i)];
        } else if (np == 2 && s.observables.size() > 1 && n >= 2) {
            // vec((I⊗B)ψ) = T·Bᵀ, so the right multiplier is the transposed
            // Bob combination: the plus combination of a pair recovers the
            // smaller member, the minus combination the larger one.
            const int j = i == 0 ? 1 : 0;
            const int lo = std::min(i, j), hi = std::max(i, j);
            const Mat combo = i == lo ? Mat(inv * (pair_obs(s, n, lo, hi) + pair_obs(s, n, hi, lo)))
                                      : Mat(inv * (pair_obs(s, n, lo, hi) - pair_obs(s, n, hi, lo)));
            partner = combo.transpose();
        } else {
            partner = ai.transpose();
        }
        if (t.cols() != partner.rows())
            throw std::invalid_argument("check_frobenius_intertwiner: shape mismatch");
        const double r = (ai * t - t * partner).norm();
        aggregate += r;
        out.push_back(make_entry("fro_a" + std::to_string(i + 1), r,
                                 9.0 * n * n * std::sqrt(eps) * tnorm, opt.tol));
    }

    if (np == 2 && s.observables.size() > 1 && tilde == nullptr) {
        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l) {
                const Mat& ak = require_obs(s, 0, k, "player 1 question");
                const Mat& al = require_obs(s, 0, l, "player 1 question");
                const Mat plus = inv * (ak + al), minus = inv * (ak - al);
                const double rp = (t * pair_obs(s, n, k, l).transpose() - plus * t).norm();
                const double rm = (t * pair_obs(s, n, l, k).transpose() - minus * t).norm();
                const double rhs = (44.0 / 3.0) * n * n * std::sqrt(eps) * tnorm;
                aggregate += rp + rm;
                out.push_back(make_entry("fro_b" + std::to_string(k + 1) + "_" + std::to_string(l + 1),
                                         std::max(rp, rm), rhs, opt.tol));
            }
    }

    const double agg_rhs = 5.0 * std::pow(np * std::pow(static_cast<double>(n), np), 2) * std::sqrt(eps);
    out.push_back(make_entry("fro_aggregate", aggregate, agg_rhs, opt.tol));
    return out;
}

std::vector<EpsilonEntry> check_uv_bound(const QuantumStrategy& s, const std::vector<RVec>& u_list,
                                         const std::vector<RVec>& v_list, double eps, double beta,
                                         const CertifyOptions& opt) {
    if (u_list.size() != v_list.size())
        throw std::invalid_argument("check_uv_bound: u/v list length mismatch");
    const int n = chsh_questions_from_strategy(s);
    const int np = players_of(s);
    const long long nb = static_cast<long long>(s.observables.size() > 1 ? s.observables[1].size() : 0);

    double sum = 0.0;
    std::vector<const Mat*> left(static_cast<size_t>(np), nullptr), right(static_cast<size_t>(np), nullptr);
    for (size_t k = 0; k < u_list.size(); ++k) {
        if (u_list[k].size() != n || v_list[k].size() != nb)
            throw std::invalid_argument("check_uv_bound: vector dims must match observable counts");
        Mat ua = Mat::Zero(s.local_dims[0], s.local_dims[0]);
        for (int i = 0; i < n; ++i)
            if (u_list[k](i) != 0.0) ua += u_list[k](i) * require_obs(s, 0, i, "player 1 question");
        Mat vb = Mat::Zero(s.local_dims[1], s.local_dims[1]);
        for (long long t = 0; t < nb; ++t)
            if (v_list[k](t) != 0.0) vb += v_list[k](t) * require_obs(s, 1, t, "player 2 question");
        std::fill(left.begin(), left.end(), nullptr);
        std::fill(right.begin(), right.end(), nullptr);
        left[0] = &ua;
        right[1] = &vb;
        const double d = action_diff_norm(s, left, right);
        sum += d * d;
    }
    return {make_entry("uv_bound", sum, beta * eps, opt.tol)};
}

double label_swap_residual(const QuantumStrategy& s, int player) {
    const int np = players_of(s);
    const auto& row = s.observables[static_cast<size_t>(player)];
    double sum = 0.0;
    std::vector<const Mat*> ops(static_cast<size_t>(np), nullptr);
    for (size_t a = 0; a < row.size(); ++a)
        for (size_t b = a + 1; b < row.size(); ++b) {
            if (row[a].size() == 0 || row[b].size() == 0) continue;
            const Mat diff = row[a] - row[b];
            ops[static_cast<size_t>(player)] = &diff;
            const double d = apply_product(s.state, s.local_dims, ops).norm();
            sum += d * d;
        }
    return sum;
}

EpsilonReport certify_chsh_strategy(const QuantumStrategy& s, const GameSpec& game,
                                    double optimal_bias, const CertifyOptions& opt,
                                    const std::string& family) {
    EpsilonReport rep;
    rep.strategy_bias = eval_bias(s, game);
    rep.optimal_bias = optimal_bias;
    rep.epsilon = measure_epsilon_from_bias(rep.strategy_bias, optimal_bias);
    const double eps = rep.epsilon;
    const int n = chsh_questions_from_strategy(s);

    CertifyOptions local = opt;
    local.omega = optimal_bias;

    auto add = [&rep](std::vector<EpsilonEntry> entries) {
        for (auto& e : entries) rep.entries.push_back(std::move(e));
    };
    add(check_bipartite_bounds(s, n, eps, local));
    add(check_nxor_bounds(s, 2, n, eps, local));
    add(check_anticommutator(s, "ffl", n, 2, eps, local));
    add(check_anticommutator(s, "nxor", n, 2, eps, local));
    add(check_sqrt_bounds(s, eps, 1, local));
    add(check_permutation_bounds(s, eps, local));
    add(check_second_bound(s, "ffl", eps, local));
    if (family == "nxor" && players_of(s) >= 3)
        add(check_second_bound(s, "nxor", eps, local));
    if (family == "wedge") add(check_second_bound(s, "fr_wedge", eps, local));
    add(check_frobenius_intertwiner(s, std::nullopt, eps, local));

    std::vector<RVec> us, vs;
    const long long nb = static_cast<long long>(s.observables[1].size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            RVec u = RVec::Zero(n), v = RVec::Zero(nb);
            u(i) = 1.0;
            v(distinct_tuple_index(n, {i, j})) = 1.0 / std::sqrt(2.0);
            v(distinct_tuple_index(n, {j, i})) = 1.0 / std::sqrt(2.0);
            us.push_back(u);
            vs.push_back(v);
            u = RVec::Zero(n);
            v = RVec::Zero(nb);
            u(j) = 1.0;
            v(distinct_tuple_index(n, {i, j})) = 1.0 / std::sqrt(2.0);
            v(distinct_tuple_index(n, {j, i})) = -1.0 / std::sqrt(2.0);
            us.push_back(u);
            vs.push_back(v);
        }
    add(check_uv_bound(s, us, vs, eps, optimal_bias, local));

    rep.sort_entries();
    return rep;
}

}  // namespace ngl
