#include "ngl/repetition.hpp"

#include <cmath>
#include <stdexcept>

namespace ngl {

const char* repetition_rule_name(RepetitionRule rule) {
    return rule == RepetitionRule::AndWin ? "and_win" : "xor_combine";
}

namespace {

// Question/answer sets of the k-fold game: per player, k-tuples of base
// labels joined with '.', copy-major lexicographic.
std::vector<std::string> power_labels(const std::vector<std::string>& base, int k) {
    std::vector<std::string> out{""};
    for (int c = 0; c < k; ++c) {
        std::vector<std::string> next;
        next.reserve(out.size() * base.size());
        for (const auto& prefix : out)
            for (const auto& l : base) next.push_back(prefix.empty() ? l : prefix + "." + l);
        out = std::move(next);
    }
    return out;
}

// Decomposes a repeated-game per-player index into per-copy base indices.
std::vector<int> split_index(long long idx, int base, int k) {
    std::vector<int> parts(static_cast<size_t>(k));
    for (int c = k; c-- > 0;) {
        parts[static_cast<size_t>(c)] = static_cast<int>(idx % base);
        idx /= base;
    }
    return parts;
}

}  // namespace

GameSpec repeat_game(const RepetitionSpec& spec) {
    const GameSpec& base = spec.base;
    base.validate();
    const int k = spec.copies;
    if (k < 1) throw std::invalid_argument("repeat_game: copies must be >= 1");
    if (k == 1) return base;

    if (spec.rule == RepetitionRule::XorCombine && !base.is_xor())
        throw std::domain_error("repeat_game: xor_combine needs an XOR-type base game");

    const GameSpec pbase = spec.rule == RepetitionRule::AndWin ? xor_to_predicate(base) : base;
    const auto qcounts = pbase.question_counts();

    GameSpec rep;
    rep.players = pbase.players;
    rep.question_sets.resize(static_cast<size_t>(rep.players));
    for (int p = 0; p < rep.players; ++p)
        rep.question_sets[static_cast<size_t>(p)] = power_labels(pbase.question_sets[static_cast<size_t>(p)], k);

    const long long qcells = rep.question_cells();
    long long acells = 1;
    if (spec.rule == RepetitionRule::AndWin) {
        for (int p = 0; p < rep.players; ++p) {
            long long c = 1;
            for (int i = 0; i < k; ++i) c *= pbase.answer_counts()[static_cast<size_t>(p)];
            acells *= c;
        }
    }
    if (qcells > spec.budget || qcells * acells > spec.budget)
        throw std::runtime_error("repeat_game: expanded game exceeds budget (" +
                                 std::to_string(qcells * (acells > 1 ? acells : 1)) + " cells)");

    // Product distribution over copy-wise question tuples.
    rep.distribution.assign(static_cast<size_t>(qcells), 0.0);
    const bool exact = pbase.distribution_exact.has_value();
    std::vector<Frac> exact_dist;
    if (exact) exact_dist.assign(static_cast<size_t>(qcells), Frac(0));

    for (long long qf = 0; qf < qcells; ++qf) {
        const auto q = rep.flat_to_tuple(qf);
        double prob = 1.0;
        Frac fprob(1);
        for (int c = 0; c < k; ++c) {
            std::vector<int> base_q(static_cast<size_t>(rep.players));
            for (int p = 0; p < rep.players; ++p)
                base_q[static_cast<size_t>(p)] =
                    split_index(q[static_cast<size_t>(p)], qcounts[static_cast<size_t>(p)], k)[static_cast<size_t>(c)];
            const long long bf = pbase.tuple_to_flat(base_q);
            prob *= pbase.prob(bf);
            if (exact) fprob = fprob * (*pbase.distribution_exact)[static_cast<size_t>(bf)];
        }
        rep.distribution[static_cast<size_t>(qf)] = exact ? fprob.value() : prob;
        if (exact) exact_dist[static_cast<size_t>(qf)] = fprob;
    }
    if (exact) rep.distribution_exact = std::move(exact_dist);

    if (spec.rule == RepetitionRule::XorCombine) {
        rep.payoff_kind = PayoffKind::Sign;
        rep.sign_tensor.assign(static_cast<size_t>(qcells), 1.0);
        for (long long qf = 0; qf < qcells; ++qf) {
            const auto q = rep.flat_to_tuple(qf);
            double sign = 1.0;
            for (int c = 0; c < k; ++c) {
                std::vector<int> base_q(static_cast<size_t>(rep.players));
                for (int p = 0; p < rep.players; ++p)
                    base_q[static_cast<size_t>(p)] =
                        split_index(q[static_cast<size_t>(p)], qcounts[static_cast<size_t>(p)], k)[static_cast<size_t>(c)];
                sign *= pbase.sign_tensor[static_cast<size_t>(pbase.tuple_to_flat(base_q))];
            }
            rep.sign_tensor[static_cast<size_t>(qf)] = sign;
        }
        rep.validate();
        return rep;
    }

    rep.payoff_kind = PayoffKind::Predicate;
    rep.answer_sets.resize(static_cast<size_t>(rep.players));
    for (int p = 0; p < rep.players; ++p)
        rep.answer_sets[static_cast<size_t>(p)] = power_labels(pbase.answer_sets[static_cast<size_t>(p)], k);
    const auto base_acounts = pbase.answer_counts();

    rep.predicate.assign(static_cast<size_t>(qcells * acells), 0);
    for (long long qf = 0; qf < qcells; ++qf) {
        const auto q = rep.flat_to_tuple(qf);
        for (long long af = 0; af < acells; ++af) {
            long long rem = af;
            std::vector<long long> aper(static_cast<size_t>(rep.players));
            for (int p = rep.players - 1; p >= 0; --p) {
                long long c = 1;
                for (int i = 0; i < k; ++i) c *= base_acounts[static_cast<size_t>(p)];
                aper[static_cast<size_t>(p)] = rem % c;
                rem /= c;
            }
            bool win = true;
            for (int c = 0; c < k && win; ++c) {
                std::vector<int> base_q(static_cast<size_t>(rep.players)), base_a(static_cast<size_t>(rep.players));
                for (int p = 0; p < rep.players; ++p) {
                    base_q[static_cast<size_t>(p)] =
                        split_index(q[static_cast<size_t>(p)], qcounts[static_cast<size_t>(p)], k)[static_cast<size_t>(c)];
                    base_a[static_cast<size_t>(p)] =
                        split_index(aper[static_cast<size_t>(p)], base_acounts[static_cast<size_t>(p)], k)[static_cast<size_t>(c)];
                }
                long long base_af = 0;
                for (int p = 0; p < rep.players; ++p)
                    base_af = base_af * base_acounts[static_cast<size_t>(p)] + base_a[static_cast<size_t>(p)];
                win = pbase.win(pbase.tuple_to_flat(base_q), base_af);
            }
            if (win) rep.predicate[static_cast<size_t>(qf * acells + af)] = 1;
        }
    }
    rep.validate();
    return rep;
}

QuantumStrategy repeat_strategy(const QuantumStrategy& strategy, int k, long long budget) {
    if (k < 1) throw std::invalid_argument("repeat_strategy: k must be >= 1");
    if (k == 1) return strategy;
    const int players = static_cast<int>(strategy.local_dims.size());

    long long total = 1;
    for (int d : strategy.local_dims) {
        for (int c = 0; c < k; ++c) {
            total *= d;
            if (total > budget) throw std::runtime_error("repeat_strategy: state exceeds budget");
        }
    }

    QuantumStrategy rep;
    rep.local_dims.resize(static_cast<size_t>(players));
    for (int p = 0; p < players; ++p) {
        long long d = 1;
        for (int c = 0; c < k; ++c) d *= strategy.local_dims[static_cast<size_t>(p)];
        rep.local_dims[static_cast<size_t>(p)] = static_cast<int>(d);
    }

    // ψ^{⊗k} lives on modes (copy, player); regroup to (player, copy).
    Vec big = strategy.state;
    std::vector<int> flat_dims(strategy.local_dims.begin(), strategy.local_dims.end());
    for (int c = 1; c < k; ++c) {
        big = kron_vec(big, strategy.state);
        flat_dims.insert(flat_dims.end(), strategy.local_dims.begin(), strategy.local_dims.end());
    }
    std::vector<int> perm;
    perm.reserve(static_cast<size_t>(players) * k);
    for (int p = 0; p < players; ++p)
        for (int c = 0; c < k; ++c) perm.push_back(c * players + p);
    rep.state = permute_modes(big, flat_dims, perm);

    rep.observables.resize(static_cast<size_t>(players));
    rep.obs_factors.resize(static_cast<size_t>(players));
    for (int p = 0; p < players; ++p) {
        const auto& base_obs = strategy.observables[static_cast<size_t>(p)];
        const long long nq = static_cast<long long>(base_obs.size());
        long long cells = 1;
        for (int c = 0; c < k; ++c) cells *= nq;
        if (cells * rep.local_dims[static_cast<size_t>(p)] > budget)
            throw std::runtime_error("repeat_strategy: observable table exceeds budget");
        rep.observables[static_cast<size_t>(p)].resize(static_cast<size_t>(cells));
        rep.obs_factors[static_cast<size_t>(p)].resize(static_cast<size_t>(cells));
        for (long long qf = 0; qf < cells; ++qf) {
            long long rem = qf;
            std::vector<int> per_copy(static_cast<size_t>(k));
            for (int c = k; c-- > 0;) {
                per_copy[static_cast<size_t>(c)] = static_cast<int>(rem % nq);
                rem /= nq;
            }
            bool all_present = true;
            for (int c = 0; c < k; ++c)
                if (base_obs[static_cast<size_t>(per_copy[static_cast<size_t>(c)])].size() == 0) all_present = false;
            if (!all_present) continue;
            Mat o = base_obs[static_cast<size_t>(per_copy[0])];
            auto& factors = rep.obs_factors[static_cast<size_t>(p)][static_cast<size_t>(qf)];
            factors.push_back(o);
            for (int c = 1; c < k; ++c) {
                const Mat& oc = base_obs[static_cast<size_t>(per_copy[static_cast<size_t>(c)])];
                factors.push_back(oc);
                o = kron(o, oc);
            }
            rep.observables[static_cast<size_t>(p)][static_cast<size_t>(qf)] = std::move(o);
        }
    }
    return rep;
}

}  // namespace ngl
