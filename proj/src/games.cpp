#include "ngl/games.hpp"

#include <cmath>
#include <stdexcept>

namespace ngl {

std::vector<int> GameSpec::question_counts() const {
    std::vector<int> c;
    c.reserve(question_sets.size());
    for (const auto& qs : question_sets) c.push_back(static_cast<int>(qs.size()));
    return c;
}

std::vector<int> GameSpec::answer_counts() const {
    std::vector<int> c;
    c.reserve(answer_sets.size());
    for (const auto& as : answer_sets) c.push_back(static_cast<int>(as.size()));
    return c;
}

long long GameSpec::question_cells() const {
    long long n = 1;
    for (const auto& qs : question_sets) n *= static_cast<long long>(qs.size());
    return n;
}

long long GameSpec::answer_cells() const {
    long long n = 1;
    for (const auto& as : answer_sets) n *= static_cast<long long>(as.size());
    return n;
}

long long GameSpec::tuple_to_flat(const std::vector<int>& q) const {
    long long flat = 0;
    for (size_t p = 0; p < question_sets.size(); ++p)
        flat = flat * static_cast<long long>(question_sets[p].size()) + q[p];
    return flat;
}

std::vector<int> GameSpec::flat_to_tuple(long long flat) const {
    std::vector<int> q(question_sets.size());
    for (size_t p = question_sets.size(); p-- > 0;) {
        const long long d = static_cast<long long>(question_sets[p].size());
        q[p] = static_cast<int>(flat % d);
        flat /= d;
    }
    return q;
}

bool GameSpec::win(long long qflat, long long aflat) const {
    return predicate[static_cast<size_t>(qflat * answer_cells() + aflat)] != 0;
}

void GameSpec::validate() const {
    if (players < 1) throw std::invalid_argument("GameSpec: players must be >= 1");
    if (static_cast<int>(question_sets.size()) != players)
        throw std::invalid_argument("GameSpec: question_sets size != players");
    const long long cells = question_cells();
    if (static_cast<long long>(distribution.size()) != cells)
        throw std::invalid_argument("GameSpec: distribution size mismatch");
    double sum = 0.0;
    for (double p : distribution) {
        if (p < 0.0) throw std::invalid_argument("GameSpec: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("GameSpec: distribution must sum to 1");
    if (distribution_exact) {
        if (static_cast<long long>(distribution_exact->size()) != cells)
            throw std::invalid_argument("GameSpec: exact distribution size mismatch");
        Frac s(0);
        for (const auto& f : *distribution_exact) {
            if (f.num < 0) throw std::invalid_argument("GameSpec: negative exact probability");
            s = s + f;
        }
        if (s != Frac(1)) throw std::invalid_argument("GameSpec: exact distribution must sum to 1");
    }
    if (payoff_kind == PayoffKind::Sign) {
        if (static_cast<long long>(sign_tensor.size()) != cells)
            throw std::invalid_argument("GameSpec: sign tensor size mismatch");
        for (double v : sign_tensor)
            if (v != 1.0 && v != -1.0)
                throw std::invalid_argument("GameSpec: sign tensor entries must be exactly +1 or -1");
    } else {
        if (static_cast<int>(answer_sets.size()) != players)
            throw std::invalid_argument("GameSpec: answer_sets size != players");
        if (static_cast<long long>(predicate.size()) != cells * answer_cells())
            throw std::invalid_argument("GameSpec: predicate not defined for every question/answer tuple");
    }
}

std::string tuple_label(const std::vector<int>& tuple) {
    std::string s;
    for (size_t i = 0; i < tuple.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(tuple[i] + 1);
    }
    return s;
}

std::vector<int> parse_tuple_label(const std::string& label) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos <= label.size()) {
        const size_t dot = label.find('.', pos);
        const std::string part = label.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        out.push_back(std::stoi(part) - 1);
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return out;
}

GameSpec build_chsh(int n) {
    if (n < 2) throw std::invalid_argument("build_chsh: n must be >= 2");
    GameSpec g;
    g.players = 2;
    g.question_sets.resize(2);
    for (int i = 0; i < n; ++i) g.question_sets[0].push_back(std::to_string(i + 1));
    const auto pairs = distinct_tuples(n, 2);
    for (const auto& pr : pairs) g.question_sets[1].push_back(tuple_label(pr));

    const long long cells = g.question_cells();
    g.distribution.assign(static_cast<size_t>(cells), 0.0);
    g.sign_tensor.assign(static_cast<size_t>(cells), 1.0);
    std::vector<Frac> exact(static_cast<size_t>(cells), Frac(0));

    const std::int64_t denom = 4LL * (static_cast<std::int64_t>(n) * (n - 1) / 2);  // 4·C(n,2)
    const Frac p(1, denom);
    const long long bcount = static_cast<long long>(pairs.size());
    auto cell = [&](int a, long long b) { return static_cast<size_t>(a * bcount + b); };

    for (long long b = 0; b < bcount; ++b) {
        const int i = pairs[static_cast<size_t>(b)][0];
        const int j = pairs[static_cast<size_t>(b)][1];
        // |i⟩⟨ij| + |j⟩⟨ij| for i<j; the reversed pair (j,i) with j>i carries
        // the −|j⟩⟨ji| sign on its larger member.
        const int lo = i < j ? i : j;
        const int hi = i < j ? j : i;
        if (i < j) {
            g.distribution[cell(lo, b)] = p.value();
            g.distribution[cell(hi, b)] = p.value();
            exact[cell(lo, b)] = p;
            exact[cell(hi, b)] = p;
        } else {
            g.distribution[cell(lo, b)] = p.value();
            g.distribution[cell(hi, b)] = p.value();
            exact[cell(lo, b)] = p;
            exact[cell(hi, b)] = p;
            g.sign_tensor[cell(hi, b)] = -1.0;
        }
    }
    g.distribution_exact = std::move(exact);
    g.validate();
    return g;
}

GameSpec build_odd_cycle(int n) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("build_odd_cycle: n must be odd and >= 3");
    GameSpec g;
    g.players = 2;
    g.payoff_kind = PayoffKind::Predicate;
    g.question_sets.resize(2);
    g.answer_sets.resize(2);
    for (int i = 0; i < n; ++i) {
        g.question_sets[0].push_back(std::to_string(i));
        g.question_sets[1].push_back(std::to_string(i));
    }
    g.answer_sets[0] = {"0", "1"};
    g.answer_sets[1] = {"0", "1"};

    const long long cells = g.question_cells();
    g.distribution.assign(static_cast<size_t>(cells), 0.0);
    std::vector<Frac> exact(static_cast<size_t>(cells), Frac(0));
    const Frac p(1, 2LL * n);
    for (int s = 0; s < n; ++s)
        for (int t : {s, (s + 1) % n}) {
            const size_t idx = static_cast<size_t>(s * n + t);
            g.distribution[idx] = p.value();
            exact[idx] = p;
        }
    g.distribution_exact = std::move(exact);

    g.predicate.assign(static_cast<size_t>(cells * 4), 0);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const int delta = (s == t) ? 1 : 0;
                    const bool win = (1 - delta) == (a ^ b);
                    g.predicate[static_cast<size_t>((s * n + t) * 4 + a * 2 + b)] = win ? 1 : 0;
                }
    g.validate();
    return g;
}

GameSpec build_ffl() {
    GameSpec g;
    g.players = 2;
    g.payoff_kind = PayoffKind::Predicate;
    g.question_sets = {{"0", "1"}, {"0", "1"}};
    g.answer_sets = {{"0", "1"}, {"0", "1"}};
    g.distribution.assign(4, 0.0);
    std::vector<Frac> exact(4, Frac(0));
    const Frac p(1, 3);
    for (auto [s, t] : {std::pair<int, int>{0, 0}, {0, 1}, {1, 0}}) {
        g.distribution[static_cast<size_t>(s * 2 + t)] = p.value();
        exact[static_cast<size_t>(s * 2 + t)] = p;
    }
    g.distribution_exact = std::move(exact);

    g.predicate.assign(16, 0);
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const bool win = (a | s) != (b | t);
                    g.predicate[static_cast<size_t>((s * 2 + t) * 4 + a * 2 + b)] = win ? 1 : 0;
                }
    g.validate();
    return g;
}

GameSpec build_xor_game(std::vector<std::vector<std::string>> question_sets,
                        std::vector<double> sign_tensor,
                        std::vector<double> distribution,
                        std::optional<std::vector<Frac>> distribution_exact) {
    GameSpec g;
    g.players = static_cast<int>(question_sets.size());
    if (g.players < 2) throw std::invalid_argument("build_xor_game: need at least 2 players");
    g.question_sets = std::move(question_sets);
    g.sign_tensor = std::move(sign_tensor);
    g.distribution = std::move(distribution);
    g.distribution_exact = std::move(distribution_exact);
    g.validate();
    return g;
}

GameTensor game_tensor(const GameSpec& game) {
    if (!game.is_xor())
        throw std::domain_error("game_tensor: unsupported for predicate games (no sign tensor)");
    GameTensor t;
    t.shape = game.question_counts();
    t.entries.resize(game.distribution.size());
    t.normalization = 0.0;
    for (size_t i = 0; i < t.entries.size(); ++i) {
        t.entries[i] = game.distribution[i] * game.sign_tensor[i];
        t.normalization += std::abs(t.entries[i]);
    }
    return t;
}

long long GameTensor::cells() const {
    long long n = 1;
    for (int d : shape) n *= d;
    return n;
}

double GameTensor::at(const std::vector<int>& q) const {
    long long flat = 0;
    for (size_t p = 0; p < shape.size(); ++p) flat = flat * shape[p] + q[p];
    return entries[static_cast<size_t>(flat)];
}

RMat GameTensor::as_matrix() const {
    if (shape.size() != 2) throw std::domain_error("GameTensor: not bipartite");
    RMat m(shape[0], shape[1]);
    for (int i = 0; i < shape[0]; ++i)
        for (int j = 0; j < shape[1]; ++j)
            m(i, j) = entries[static_cast<size_t>(i) * shape[1] + j];
    return m;
}

SymmetrizedMatrix symmetrize(const GameTensor& tensor) {
    if (tensor.shape.size() != 2)
        throw std::domain_error("symmetrize: only bipartite tensors (N-player handled via flattening in sdp)");
    const RMat g = tensor.as_matrix();
    const Eigen::Index r = g.rows(), c = g.cols();
    // ½[0 Gᵀ; G 0]: column-index block first, then row-index block.
    RMat m = RMat::Zero(r + c, r + c);
    m.topRightCorner(c, r) = 0.5 * g.transpose();
    m.bottomLeftCorner(r, c) = 0.5 * g;
    return SymmetrizedMatrix{std::move(m)};
}

double reference_bounds(const std::string& kind, int d) {
    auto torpedo_c = [](int dd) -> double {
        if (dd == 2) return 3.0 / 4.0;
        if (dd == 3) return 11.0 / 12.0;
        throw std::invalid_argument("reference_bounds: torpedo constants known for d=2,3 only");
    };
    auto torpedo_q = [](int dd) -> double {
        if (dd == 2) return 0.79;
        if (dd == 3) return 1.0;
        throw std::invalid_argument("reference_bounds: torpedo constants known for d=2,3 only");
    };
    if (kind == "chsh_d_upper") {
        if (d < 2) throw std::invalid_argument("reference_bounds: d must be >= 2");
        return 1.0 / d + (d - 1.0) / (d * std::sqrt(static_cast<double>(d)));
    }
    if (kind == "torpedo_classical") return torpedo_c(d);
    if (kind == "torpedo_quantum") return torpedo_q(d);
    if (kind == "torpedo_ratio") return torpedo_q(d) / torpedo_c(d);
    throw std::invalid_argument("reference_bounds: unknown kind '" + kind + "'");
}

GameSpec xor_to_predicate(const GameSpec& game) {
    if (!game.is_xor()) return game;
    GameSpec g;
    g.players = game.players;
    g.payoff_kind = PayoffKind::Predicate;
    g.question_sets = game.question_sets;
    g.distribution = game.distribution;
    g.distribution_exact = game.distribution_exact;
    g.answer_sets.assign(static_cast<size_t>(game.players), {"0", "1"});
    const long long qcells = g.question_cells();
    const long long acells = 1LL << game.players;
    g.predicate.assign(static_cast<size_t>(qcells * acells), 0);
    for (long long q = 0; q < qcells; ++q)
        for (long long a = 0; a < acells; ++a) {
            int par = 0;
            for (int p = 0; p < game.players; ++p) par ^= static_cast<int>((a >> (game.players - 1 - p)) & 1);
            const double want = game.sign_tensor[static_cast<size_t>(q)];
            const bool win = (par == 0 ? 1.0 : -1.0) == want;
            g.predicate[static_cast<size_t>(q * acells + a)] = win ? 1 : 0;
        }
    g.validate();
    return g;
}

}  // namespace ngl
