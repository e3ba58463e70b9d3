#include "ngl/json_io.hpp"

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace ngl {

namespace {

json matrix_to_json(const Mat& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json rre = json::array(), rim = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rre.push_back(m(i, j).real());
            rim.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rre));
        im.push_back(std::move(rim));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Mat matrix_from_json(const json& j) {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const Eigen::Index rows = static_cast<Eigen::Index>(re.size());
    const Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(re[0].size());
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index jx = 0; jx < cols; ++jx)
            m(i, jx) = cxd(re[static_cast<size_t>(i)][static_cast<size_t>(jx)].get<double>(),
                           im[static_cast<size_t>(i)][static_cast<size_t>(jx)].get<double>());
    return m;
}

std::string qkey(const GameSpec& g, long long flat) {
    const auto tuple = g.flat_to_tuple(flat);
    std::string key;
    for (size_t p = 0; p < tuple.size(); ++p) {
        if (p) key += ',';
        key += g.question_sets[p][static_cast<size_t>(tuple[p])];
    }
    return key;
}

std::vector<int> parse_qkey(const GameSpec& g, const std::string& key) {
    std::vector<int> tuple;
    size_t pos = 0;
    for (size_t p = 0; p < g.question_sets.size(); ++p) {
        const size_t comma = key.find(',', pos);
        const std::string label =
            key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const auto& labels = g.question_sets[p];
        const auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end())
            throw std::invalid_argument("game JSON: unknown question label '" + label + "'");
        tuple.push_back(static_cast<int>(it - labels.begin()));
        pos = comma == std::string::npos ? key.size() + 1 : comma + 1;
    }
    return tuple;
}

}  // namespace

json game_to_json(const GameSpec& game) {
    json j;
    j["players"] = game.players;
    j["questions"] = game.question_sets;

    json dist = json::object();
    const long long cells = game.question_cells();
    for (long long f = 0; f < cells; ++f) {
        const bool zero = game.distribution_exact
                              ? (*game.distribution_exact)[static_cast<size_t>(f)].num == 0
                              : game.distribution[static_cast<size_t>(f)] == 0.0;
        if (zero) continue;
        if (game.distribution_exact)
            dist[qkey(game, f)] = (*game.distribution_exact)[static_cast<size_t>(f)].str();
        else
            dist[qkey(game, f)] = game.distribution[static_cast<size_t>(f)];
    }
    j["distribution"] = std::move(dist);

    json payoff;
    if (game.is_xor()) {
        payoff["type"] = "sign";
        json signs = json::object();
        for (long long f = 0; f < cells; ++f)
            if (game.sign_tensor[static_cast<size_t>(f)] < 0) signs[qkey(game, f)] = -1;
        payoff["negative"] = std::move(signs);  // omitted cells are +1
    } else {
        payoff["type"] = "predicate";
        payoff["answers"] = game.answer_sets;
        const long long acells = game.answer_cells();
        json rows = json::object();
        for (long long f = 0; f < cells; ++f) {
            json wins = json::array();
            for (long long a = 0; a < acells; ++a)
                if (game.win(f, a)) wins.push_back(a);
            rows[qkey(game, f)] = std::move(wins);
        }
        payoff["winning"] = std::move(rows);
    }
    j["payoff"] = std::move(payoff);
    return j;
}

GameSpec game_from_json(const json& j) {
    GameSpec g;
    g.players = j.at("players").get<int>();
    g.question_sets = j.at("questions").get<std::vector<std::vector<std::string>>>();
    const long long cells = g.question_cells();
    g.distribution.assign(static_cast<size_t>(cells), 0.0);

    bool all_exact = true;
    std::vector<Frac> exact(static_cast<size_t>(cells), Frac(0));
    for (const auto& [key, value] : j.at("distribution").items()) {
        const long long f = g.tuple_to_flat(parse_qkey(g, key));
        if (value.is_string()) {
            const Frac fr = Frac::parse(value.get<std::string>());
            exact[static_cast<size_t>(f)] = fr;
            g.distribution[static_cast<size_t>(f)] = fr.value();
        } else {
            all_exact = false;
            g.distribution[static_cast<size_t>(f)] = value.get<double>();
        }
    }
    if (all_exact) g.distribution_exact = std::move(exact);

    const auto& payoff = j.at("payoff");
    const std::string type = payoff.at("type").get<std::string>();
    if (type == "sign") {
        g.payoff_kind = PayoffKind::Sign;
        g.sign_tensor.assign(static_cast<size_t>(cells), 1.0);
        if (payoff.contains("negative"))
            for (const auto& [key, value] : payoff.at("negative").items()) {
                (void)value;
                g.sign_tensor[static_cast<size_t>(g.tuple_to_flat(parse_qkey(g, key)))] = -1.0;
            }
    } else if (type == "predicate") {
        g.payoff_kind = PayoffKind::Predicate;
        g.answer_sets = payoff.at("answers").get<std::vector<std::vector<std::string>>>();
        const long long acells = g.answer_cells();
        g.predicate.assign(static_cast<size_t>(cells * acells), 0);
        for (const auto& [key, wins] : payoff.at("winning").items()) {
            const long long f = g.tuple_to_flat(parse_qkey(g, key));
            for (const auto& a : wins)
                g.predicate[static_cast<size_t>(f * acells + a.get<long long>())] = 1;
        }
    } else {
        throw std::invalid_argument("game JSON: payoff type must be sign or predicate");
    }
    g.validate();
    return g;
}

json strategy_to_json(const QuantumStrategy& s) {
    json j;
    j["dims"] = s.local_dims;
    const int n = s.observables.empty() ? 0 : static_cast<int>(s.observables[0].size());
    j["n"] = n;
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < s.state.size(); ++i) {
        re.push_back(s.state(i).real());
        im.push_back(s.state(i).imag());
    }
    j["state"] = json{{"re", std::move(re)}, {"im", std::move(im)}};
    json obs = json::array();
    for (size_t p = 0; p < s.observables.size(); ++p) {
        // Question labels follow the canonical arity-(p+1) tuple enumeration
        // when the row has exactly that many slots; flat 1-based otherwise.
        const bool tuple_keys =
            n > 0 && static_cast<long long>(s.observables[p].size()) ==
                         distinct_tuple_count(n, static_cast<int>(p) + 1);
        const auto tuples = tuple_keys ? distinct_tuples(n, static_cast<int>(p) + 1)
                                       : std::vector<std::vector<int>>{};
        for (size_t q = 0; q < s.observables[p].size(); ++q) {
            if (s.observables[p][q].size() == 0) continue;
            json o = matrix_to_json(s.observables[p][q]);
            o["player"] = static_cast<int>(p) + 1;
            o["question"] = tuple_keys ? tuple_label(tuples[q]) : std::to_string(q + 1);
            obs.push_back(std::move(o));
        }
    }
    j["observables"] = std::move(obs);
    return j;
}

QuantumStrategy strategy_from_json(const json& j) {
    QuantumStrategy s;
    s.local_dims = j.at("dims").get<std::vector<int>>();
    const int n = j.contains("n") ? j.at("n").get<int>() : 0;
    const auto& st = j.at("state");
    const auto& re = st.at("re");
    const auto& im = st.at("im");
    s.state = Vec(static_cast<Eigen::Index>(re.size()));
    for (size_t i = 0; i < re.size(); ++i)
        s.state(static_cast<Eigen::Index>(i)) = cxd(re[i].get<double>(), im[i].get<double>());

    s.observables.resize(s.local_dims.size());
    for (const auto& o : j.at("observables")) {
        const int player = o.at("player").get<int>() - 1;
        if (player < 0 || player >= static_cast<int>(s.observables.size()))
            throw std::invalid_argument("strategy JSON: player index out of range");
        const auto tuple = parse_tuple_label(o.at("question").get<std::string>());
        long long q;
        if (tuple.size() == 1) q = tuple[0];
        else if (n > 0) q = distinct_tuple_index(n, tuple);
        else throw std::invalid_argument("strategy JSON: tuple question label needs the 'n' field");
        auto& row = s.observables[static_cast<size_t>(player)];
        if (static_cast<long long>(row.size()) <= q) row.resize(static_cast<size_t>(q) + 1);
        Mat m = matrix_from_json(o);
        // Hermiticity is enforced by symmetrization at load time; the
        // deviation is logged when it is more than rounding noise.
        const double dev = (m - m.adjoint()).norm();
        if (dev > 1e-12)
            std::cerr << "strategy JSON: symmetrized observable (player " << (player + 1)
                      << ", question " << o.at("question").get<std::string>()
                      << ", deviation " << dev << ")\n";
        row[static_cast<size_t>(q)] = 0.5 * (m + m.adjoint());
    }
    s.validate();
    return s;
}

json classical_result_to_json(const ClassicalResult& r) {
    json j;
    j["mode"] = r.mode;
    j["value"] = r.value;
    if (r.value_exact) j["value_exact"] = r.value_exact->str();
    j["bias"] = r.bias();
    j["winprob"] = r.winprob();
    j["argmax_strategy"] = r.argmax_strategy;
    j["tie_count"] = r.tie_count;
    return j;
}

json quantum_bias_to_json(const QuantumBiasResult& r) {
    json j;
    j["bias"] = r.bias;
    j["winning_restart"] = r.winning_restart;
    j["sweeps"] = r.sweeps;
    json u = json::array(), v = json::array();
    for (const auto& x : r.u) u.push_back(std::vector<double>(x.data(), x.data() + x.size()));
    for (const auto& x : r.v) v.push_back(std::vector<double>(x.data(), x.data() + x.size()));
    j["u"] = std::move(u);
    j["v"] = std::move(v);
    return j;
}

json epsilon_report_to_json(const EpsilonReport& r) {
    json j;
    j["epsilon"] = r.epsilon;
    j["strategy_bias"] = r.strategy_bias;
    j["optimal_bias"] = r.optimal_bias;
    json entries = json::array();
    for (const auto& e : r.entries) {
        json je;
        je["bound_id"] = e.bound_id;
        je["lhs"] = e.lhs;
        je["rhs"] = e.rhs;
        je["margin"] = e.margin;
        je["pass"] = e.pass;
        if (e.degenerate) je["degenerate"] = true;
        if (!e.note.empty()) je["note"] = e.note;
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    j["all_pass"] = r.all_pass();
    return j;
}

json dual_certificate_to_json(const DualCertificate& c) {
    json j;
    j["y"] = c.y;
    j["min_eig"] = c.min_eig;
    j["psd"] = c.psd;
    return j;
}

json gap_report_to_json(const GapReport& r) {
    return json{{"gap_value", r.gap_value},
                {"classification", r.classification},
                {"primal_value", r.primal_value},
                {"dual_value", r.dual_value}};
}

json spectrum_to_json(const Spectrum& s) {
    return json{{"eigenvalues", s.eigenvalues}, {"min", s.min}, {"psd", s.psd}};
}

json defect_result_to_json(const DefectResult& d) {
    json j;
    j["spectrum"] = spectrum_to_json(d.spectrum);
    j["comparison"] = json{{"base_eigenvalues", d.comparison.base_eigenvalues},
                           {"predicted", d.comparison.predicted},
                           {"computed", d.comparison.computed},
                           {"max_discrepancy", d.comparison.max_discrepancy},
                           {"degenerate", d.comparison.degenerate}};
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

std::string content_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace ngl
