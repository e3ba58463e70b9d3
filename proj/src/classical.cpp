#include "ngl/classical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "ngl/repetition.hpp"

namespace ngl {

double ClassicalResult::bias() const { return mode == "bias" ? value : 2.0 * value - 1.0; }
double ClassicalResult::winprob() const { return mode == "winprob" ? value : (value + 1.0) / 2.0; }

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NGL_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min<unsigned>(hw == 0 ? 1 : hw, 8));
}

// Deterministic per-player decoding of a flat strategy id: player-major,
// question-major, answer index innermost. Lexicographic order on this
// encoding is the documented tie-break.
struct StrategyCodec {
    std::vector<int> qcounts;
    std::vector<int> acounts;
    long long total = 1;

    StrategyCodec(const std::vector<int>& qc, const std::vector<int>& ac) : qcounts(qc), acounts(ac) {
        long double size = 1.0L;
        for (size_t p = 0; p < qcounts.size(); ++p)
            for (int q = 0; q < qcounts[p]; ++q) size *= acounts[p];
        total = size > 4e18L ? -1 : static_cast<long long>(size);
    }

    std::vector<std::vector<int>> decode(long long id) const {
        std::vector<std::vector<int>> tables(qcounts.size());
        for (size_t p = qcounts.size(); p-- > 0;) {
            tables[p].resize(static_cast<size_t>(qcounts[p]));
            for (int q = qcounts[p]; q-- > 0;) {
                tables[p][static_cast<size_t>(q)] = static_cast<int>(id % acounts[p]);
                id /= acounts[p];
            }
        }
        return tables;
    }
};

// Best score, smallest argmax id and tie count over one id range. Score
// comparisons are exact for the integer instantiation; per-worker pruning
// keeps the reduction worker-count independent.
template <typename S>
struct Slice {
    S best{};
    bool have = false;
    long long arg = -1;
    long long ties = 0;
};

template <typename S, typename ScoreFn>
Slice<S> scan_range(long long lo, long long hi, const ScoreFn& score) {
    Slice<S> s;
    for (long long id = lo; id < hi; ++id) {
        S v{};
        if (!score(id, s, v)) continue;  // pruned: provably below the local best
        if (!s.have || v > s.best) {
            s.best = v;
            s.arg = id;
            s.ties = 1;
            s.have = true;
        } else if (v == s.best) {
            ++s.ties;
        }
    }
    return s;
}

template <typename S, typename ScoreFn>
Slice<S> scan_parallel(long long total, int threads, const ScoreFn& score) {
    std::vector<Slice<S>> slices;
    if (threads <= 1 || total < 1024) {
        slices.push_back(scan_range<S>(0, total, score));
    } else {
        slices.resize(static_cast<size_t>(threads));
        std::vector<std::thread> pool;
        const long long chunk = (total + threads - 1) / threads;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t]() {
                const long long lo = t * chunk;
                const long long hi = std::min<long long>(total, lo + chunk);
                if (lo < hi) slices[static_cast<size_t>(t)] = scan_range<S>(lo, hi, score);
            });
        for (auto& th : pool) th.join();
    }
    Slice<S> merged;
    for (const auto& s : slices) {
        if (!s.have) continue;
        if (!merged.have || s.best > merged.best) {
            merged = s;
        } else if (s.best == merged.best) {
            merged.ties += s.ties;
            if (s.arg < merged.arg) merged.arg = s.arg;
        }
    }
    return merged;
}

}  // namespace

ClassicalResult classical_value(const GameSpec& game, const ClassicalOptions& opt) {
    game.validate();
    if (opt.mode != "bias" && opt.mode != "winprob")
        throw std::invalid_argument("classical_value: mode must be bias or winprob");
    if (opt.mode == "bias" && !game.is_xor())
        throw std::invalid_argument("classical_value: bias mode needs an XOR-type game");

    const GameSpec pg = game.is_xor() ? xor_to_predicate(game) : game;
    StrategyCodec codec(pg.question_counts(), pg.answer_counts());
    if (codec.total < 0 || codec.total > opt.budget)
        throw BudgetError(codec.total < 0 ? -1 : codec.total);

    const long long qcells = pg.question_cells();
    const auto acounts = pg.answer_counts();
    std::vector<std::vector<int>> qidx(static_cast<size_t>(qcells));
    for (long long qf = 0; qf < qcells; ++qf) qidx[static_cast<size_t>(qf)] = pg.flat_to_tuple(qf);

    auto answer_flat = [&](const std::vector<std::vector<int>>& tables, const std::vector<int>& q) {
        long long af = 0;
        for (size_t p = 0; p < tables.size(); ++p)
            af = af * acounts[p] + tables[p][static_cast<size_t>(q[p])];
        return af;
    };

    const bool prune = !opt.exhaustive;
    const int threads = resolve_threads(opt.threads);

    ClassicalResult res;
    res.mode = opt.mode;

    if (pg.distribution_exact) {
        // Integer scoring over the common denominator: comparisons, argmax and
        // tie counts are exact.
        std::int64_t denom = 1;
        for (const auto& f : *pg.distribution_exact) denom = std::lcm(denom, f.den);
        std::vector<std::int64_t> weight(static_cast<size_t>(qcells));
        std::vector<std::int64_t> suffix(static_cast<size_t>(qcells) + 1, 0);
        for (long long qf = 0; qf < qcells; ++qf) {
            const Frac& f = (*pg.distribution_exact)[static_cast<size_t>(qf)];
            weight[static_cast<size_t>(qf)] = f.num * (denom / f.den);
        }
        for (long long qf = qcells; qf-- > 0;)
            suffix[static_cast<size_t>(qf)] = suffix[static_cast<size_t>(qf) + 1] + weight[static_cast<size_t>(qf)];

        auto score = [&](long long id, const Slice<std::int64_t>& local, std::int64_t& out) {
            const auto tables = codec.decode(id);
            std::int64_t w = 0;
            for (long long qf = 0; qf < qcells; ++qf) {
                if (weight[static_cast<size_t>(qf)] == 0) continue;
                if (prune && local.have && w + suffix[static_cast<size_t>(qf)] < local.best) return false;
                if (pg.win(qf, answer_flat(tables, qidx[static_cast<size_t>(qf)])))
                    w += weight[static_cast<size_t>(qf)];
            }
            out = w;
            return true;
        };
        const auto merged = scan_parallel<std::int64_t>(codec.total, threads, score);
        const Frac wexact(merged.best, denom);
        res.tie_count = merged.ties;
        res.argmax_strategy = codec.decode(merged.arg);
        if (opt.mode == "winprob") {
            res.value_exact = wexact;
            res.value = wexact.value();
        } else {
            res.value_exact = wexact * Frac(2) - Frac(1);
            res.value = res.value_exact->value();
        }
        return res;
    }

    std::vector<double> weight(static_cast<size_t>(qcells));
    std::vector<double> suffix(static_cast<size_t>(qcells) + 1, 0.0);
    for (long long qf = 0; qf < qcells; ++qf) weight[static_cast<size_t>(qf)] = pg.prob(qf);
    for (long long qf = qcells; qf-- > 0;)
        suffix[static_cast<size_t>(qf)] = suffix[static_cast<size_t>(qf) + 1] + weight[static_cast<size_t>(qf)];

    auto score = [&](long long id, const Slice<double>& local, double& out) {
        const auto tables = codec.decode(id);
        double w = 0.0;
        for (long long qf = 0; qf < qcells; ++qf) {
            if (weight[static_cast<size_t>(qf)] == 0.0) continue;
            if (prune && local.have && w + suffix[static_cast<size_t>(qf)] < local.best) return false;
            if (pg.win(qf, answer_flat(tables, qidx[static_cast<size_t>(qf)])))
                w += weight[static_cast<size_t>(qf)];
        }
        out = w;
        return true;
    };
    const auto merged = scan_parallel<double>(codec.total, threads, score);
    res.tie_count = merged.ties;
    res.argmax_strategy = codec.decode(merged.arg);
    res.value = opt.mode == "winprob" ? merged.best : 2.0 * merged.best - 1.0;
    return res;
}

ClassicalResult classical_value_repeated(const GameSpec& game, int k, const ClassicalOptions& opt) {
    if (k < 1) throw std::invalid_argument("classical_value_repeated: k must be >= 1");
    if (k == 1) return classical_value(game, opt);
    RepetitionSpec spec;
    spec.base = game;
    spec.copies = k;
    spec.rule = RepetitionRule::AndWin;
    spec.budget = opt.budget;
    const GameSpec rep = repeat_game(spec);
    return classical_value(rep, opt);
}

}  // namespace ngl
