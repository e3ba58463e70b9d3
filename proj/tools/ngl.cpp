// Command-line front end: game construction, classical/quantum values,
// certification, repetition, SDP audits and operator-identity checks.
// Exit codes: 0 clean, 2 audit findings (a reported bound failed or a PSD
// audit came back negative), 1 errors.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>

#include "ngl/classical.hpp"
#include "ngl/json_io.hpp"
#include "ngl/repetition.hpp"

using namespace ngl;

namespace {

constexpr const char* kVersion = "ngl 0.1.0";

struct GlobalOpts {
    std::string out_dir;
    std::uint64_t seed = 1;
    double tol = 1e-9;
};

void emit(const GlobalOpts& g, const std::string& command_line,
          const std::vector<std::string>& inputs, const json& output, double wall_seconds) {
    std::cout << output.dump(2) << std::endl;
    if (g.out_dir.empty()) return;
    json record;
    record["command"] = command_line;
    json digests = json::object();
    for (const auto& path : inputs) digests[path] = content_digest(path);
    record["input_digests"] = std::move(digests);
    record["seed"] = g.seed;
    record["version"] = kVersion;
    record["output"] = output;
    record["wall_seconds"] = wall_seconds;
    const auto stamp = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
    save_json_file(g.out_dir + "/run_" + std::to_string(stamp) + ".json", record);
}

GameSpec build_family(const std::string& family, int n) {
    if (family == "chsh") return build_chsh(n);
    if (family == "odd-cycle" || family == "odd_cycle") return build_odd_cycle(n);
    if (family == "ffl") return build_ffl();
    throw std::invalid_argument("unknown game family '" + family + "'");
}

void print_game_tables(const GameSpec& g) {
    std::cout << "players: " << g.players << "\n";
    for (int p = 0; p < g.players; ++p) {
        std::cout << "questions[" << (p + 1) << "]:";
        for (const auto& q : g.question_sets[static_cast<size_t>(p)]) std::cout << " " << q;
        std::cout << "\n";
    }
    std::cout << "distribution:\n";
    const long long cells = g.question_cells();
    for (long long f = 0; f < cells; ++f) {
        if (g.distribution[static_cast<size_t>(f)] == 0.0) continue;
        const auto t = g.flat_to_tuple(f);
        std::cout << "  (";
        for (size_t p = 0; p < t.size(); ++p)
            std::cout << (p ? "," : "") << g.question_sets[p][static_cast<size_t>(t[p])];
        std::cout << ") = " << g.distribution[static_cast<size_t>(f)];
        if (g.is_xor()) std::cout << "  sign " << (g.sign_tensor[static_cast<size_t>(f)] > 0 ? "+1" : "-1");
        std::cout << "\n";
    }
    if (g.is_xor()) {
        const GameTensor t = game_tensor(g);
        std::cout << "tensor normalization: " << t.normalization << "\n";
    }
}

void print_epsilon_table(const EpsilonReport& rep) {
    std::cout << "epsilon " << rep.epsilon << "  strategy bias " << rep.strategy_bias
              << "  optimal bias " << rep.optimal_bias << "\n";
    std::cout << "bound                      lhs            rhs            margin      status\n";
    for (const auto& e : rep.entries) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-24s %14.6e %14.6e %11.3e  %s", e.bound_id.c_str(),
                      e.lhs, e.rhs, e.margin,
                      e.degenerate ? "degenerate" : (e.pass ? "pass" : "FAIL"));
        std::cout << buf << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal XOR/FFL game toolkit"};
    app.set_version_flag("--version", kVersion);
    app.fallthrough();  // global options may trail the subcommand
    GlobalOpts global;
    app.add_option("--out", global.out_dir, "directory for run records");
    app.add_option("--seed", global.seed, "seed for all randomized steps");
    app.add_option("--tol", global.tol, "global tolerance override");

    std::string command_line;
    for (int i = 0; i < argc; ++i) command_line += std::string(i ? " " : "") + argv[i];

    int exit_code = 0;
    const auto t0 = std::chrono::steady_clock::now();
    auto wall = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    // game build/show
    auto* game_cmd = app.add_subcommand("game", "construct and inspect games");
    auto* game_build = game_cmd->add_subcommand("build", "build a named game family");
    std::string family = "chsh";
    int n_param = 2;
    std::string out_file;
    game_build->add_option("--family", family, "chsh | odd-cycle | ffl")->required();
    game_build->add_option("--n", n_param, "question-count parameter");
    game_build->add_option("--out-file", out_file, "write game JSON here");
    game_build->callback([&]() {
        const GameSpec g = build_family(family, n_param);
        const json j = game_to_json(g);
        if (!out_file.empty()) save_json_file(out_file, j);
        emit(global, command_line, {}, j, wall());
    });

    auto* game_show = game_cmd->add_subcommand("show", "print tensor and distribution tables");
    std::string game_path;
    game_show->add_option("game", game_path, "game JSON file")->required();
    game_show->callback([&]() { print_game_tables(game_from_json(load_json_file(game_path))); });

    // game repeat / top-level repeat
    auto add_repeat = [&](CLI::App* parent) {
        auto* rep = parent->add_subcommand("repeat", "k-fold parallel repetition");
        static std::string rpath, rule = "and", rout;
        static int k = 2;
        rep->add_option("game", rpath, "game JSON file")->required();
        rep->add_option("--k", k, "number of copies");
        rep->add_option("--rule", rule, "and | xor");
        rep->add_option("--out-file", rout, "write repeated game JSON here");
        rep->callback([&]() {
            RepetitionSpec spec;
            spec.base = game_from_json(load_json_file(rpath));
            spec.copies = k;
            spec.rule = rule == "xor" ? RepetitionRule::XorCombine : RepetitionRule::AndWin;
            const GameSpec g = repeat_game(spec);
            json j = game_to_json(g);
            j["rule"] = repetition_rule_name(spec.rule);
            if (!rout.empty()) save_json_file(rout, j);
            emit(global, command_line, {rpath}, j, wall());
        });
        return rep;
    };
    add_repeat(&app);
    add_repeat(game_cmd);

    // value classical|quantum
    auto* value_cmd = app.add_subcommand("value", "classical and quantum game values");
    auto* vc = value_cmd->add_subcommand("classical", "exhaustive deterministic oracle");
    std::string vc_path, vc_mode = "winprob";
    int vc_repeat = 1;
    long long vc_budget = 1LL << 30;
    bool vc_exhaustive = false;
    vc->add_option("game", vc_path)->required();
    vc->add_option("--mode", vc_mode, "bias | winprob");
    vc->add_option("--repeat", vc_repeat, "k-fold repetition before solving");
    vc->add_option("--budget", vc_budget, "max deterministic strategies");
    vc->add_flag("--exhaustive", vc_exhaustive, "disable pruning (audit runs)");
    vc->callback([&]() {
        const GameSpec g = game_from_json(load_json_file(vc_path));
        ClassicalOptions opt;
        opt.mode = vc_mode;
        opt.budget = vc_budget;
        opt.exhaustive = vc_exhaustive;
        const ClassicalResult r = vc_repeat > 1 ? classical_value_repeated(g, vc_repeat, opt)
                                                : classical_value(g, opt);
        emit(global, command_line, {vc_path}, classical_result_to_json(r), wall());
    });

    auto* vq = value_cmd->add_subcommand("quantum", "Tsirelson bias (bipartite XOR)");
    std::string vq_path;
    int vq_restarts = 16;
    double vq_tol = 1e-10;
    vq->add_option("game", vq_path)->required();
    vq->add_option("--restarts", vq_restarts);
    vq->add_option("--tol", vq_tol);
    vq->callback([&]() {
        const GameSpec g = game_from_json(load_json_file(vq_path));
        QuantumBiasOptions opt;
        opt.restarts = vq_restarts;
        opt.tol = vq_tol;
        opt.seed = global.seed;
        const QuantumBiasResult r = quantum_bias_bipartite(game_tensor(g), opt);
        json j = quantum_bias_to_json(r);
        j["winprob"] = (r.bias + 1.0) / 2.0;
        emit(global, command_line, {vq_path}, j, wall());
    });

    // strategy make|eval
    auto* strat_cmd = app.add_subcommand("strategy", "construct and evaluate strategies");
    auto* sm = strat_cmd->add_subcommand("make", "optimal CHSH-family strategy");
    std::string sm_family = "chsh", sm_out;
    int sm_n = 2;
    sm->add_option("--family", sm_family, "chsh");
    sm->add_option("--n", sm_n);
    sm->add_option("--out-file", sm_out, "write strategy JSON here");
    sm->callback([&]() {
        if (sm_family != "chsh") throw std::invalid_argument("strategy make: only the chsh family is constructed");
        const QuantumStrategy s = optimal_chsh_strategy(sm_n);
        const json j = strategy_to_json(s);
        if (!sm_out.empty()) save_json_file(sm_out, j);
        emit(global, command_line, {}, j, wall());
    });

    auto* se = strat_cmd->add_subcommand("eval", "bias/win probability of a strategy");
    std::string se_game, se_strategy, se_mode = "both";
    se->add_option("game", se_game)->required();
    se->add_option("strategy", se_strategy)->required();
    se->add_option("--mode", se_mode, "bias | winprob | both");
    se->callback([&]() {
        const GameSpec g = game_from_json(load_json_file(se_game));
        const QuantumStrategy s = strategy_from_json(load_json_file(se_strategy));
        json j;
        if (se_mode == "bias" || se_mode == "both") j["bias"] = eval_bias(s, g);
        if (se_mode == "winprob" || se_mode == "both") j["winprob"] = eval_win_prob(s, g);
        emit(global, command_line, {se_game, se_strategy}, j, wall());
    });

    // certify
    auto* cert = app.add_subcommand("certify", "ε-approximality error-bound report");
    std::string ct_game, ct_strategy, ct_family = "xor";
    double ct_omega = 0.0;
    cert->add_option("game", ct_game)->required();
    cert->add_option("strategy", ct_strategy)->required();
    cert->add_option("--family", ct_family, "xor | ffl | nxor | wedge (labels the ω-bounds)");
    cert->add_option("--omega", ct_omega, "optimal bias (default: solve the game)");
    cert->callback([&]() {
        const GameSpec g = game_from_json(load_json_file(ct_game));
        const QuantumStrategy s = strategy_from_json(load_json_file(ct_strategy));
        double omega = ct_omega;
        if (omega <= 0.0) {
            QuantumBiasOptions opt;
            opt.seed = global.seed;
            omega = quantum_bias_bipartite(game_tensor(g), opt).bias;
        }
        CertifyOptions copt;
        copt.seed = global.seed;
        if (app.count("--tol")) copt.tol = global.tol;
        const EpsilonReport rep = certify_chsh_strategy(s, g, omega, copt, ct_family);
        print_epsilon_table(rep);
        emit(global, command_line, {ct_game, ct_strategy}, epsilon_report_to_json(rep), wall());
        if (!rep.all_pass()) exit_code = 2;
    });

    // sdp audit
    auto* sdp_cmd = app.add_subcommand("sdp", "semidefinite-program audits");
    auto* audit = sdp_cmd->add_subcommand("audit", "dual-certificate PSD audit");
    std::string au_game, au_family = "3xor";
    double au_omega = 1.0;
    int au_reps = 1;
    audit->add_option("game", au_game)->required();
    audit->add_option("--family", au_family, "3xor | 4xor | 5xor | nxor | nxor_wedge | ffl_wedge");
    audit->add_option("--omega", au_omega, "ω plugged into the closed-form dual blocks");
    audit->add_option("--reps", au_reps, "strong-parallel-repetition count (wedge families)");
    audit->callback([&]() {
        const GameSpec g = game_from_json(load_json_file(au_game));
        const GameTensor tensor = game_tensor(g);
        const SymmetrizedMatrix sym = flatten_symmetrize(tensor);
        // Size-compatible diagonal: each flattened block carries mass ω/2
        // spread uniformly (reduces to the known 1/(N!·n), 1/(N!·n(n−1))
        // blocks for two players).
        const Eigen::Index cols = sym.matrix.rows() - tensor.shape[0];
        std::vector<double> y(static_cast<size_t>(sym.matrix.rows()));
        for (Eigen::Index i = 0; i < sym.matrix.rows(); ++i)
            y[static_cast<size_t>(i)] = i < cols ? au_omega / (2.0 * cols)
                                                 : au_omega / (2.0 * tensor.shape[0]);
        const DualCertificate cert_res = dual_certificate_audit(sym.matrix, y);
        json j = dual_certificate_to_json(cert_res);
        j["family"] = au_family;
        j["omega"] = au_omega;
        const int nq = tensor.shape[0];
        j["reference_y"] = reference_dual_y(au_family, nq, static_cast<int>(tensor.shape.size()), au_reps, au_omega);
        j["rayleigh_oracle_min"] = rayleigh_min_oracle(cert_res.op);
        emit(global, command_line, {au_game}, j, wall());
        if (!cert_res.psd) exit_code = 2;
    });

    // opident
    auto* op_cmd = app.add_subcommand("opident", "operator identities and spectra");
    auto add_op_sub = [&](const std::string& name, auto handler) {
        auto* sub = op_cmd->add_subcommand(name);
        static std::map<std::string, std::string> paths;
        sub->add_option("input", paths[name], "inputs JSON file")->required();
        sub->callback([&, name, handler]() {
            const json in = load_json_file(paths[name]);
            json outj;
            const int code = handler(in, outj);
            emit(global, command_line, {paths[name]}, outj, wall());
            if (code != 0) exit_code = code;
        });
        return sub;
    };

    auto matrix_from = [](const json& j) {
        const auto& re = j.at("re");
        const auto& im = j.at("im");
        Mat m(static_cast<Eigen::Index>(re.size()),
              static_cast<Eigen::Index>(re.empty() ? 0 : re[0].size()));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                m(i, c) = cxd(re[static_cast<size_t>(i)][static_cast<size_t>(c)].get<double>(),
                              im[static_cast<size_t>(i)][static_cast<size_t>(c)].get<double>());
        return m;
    };

    add_op_sub("defect", [matrix_from](const json& in, json& out) {
        DefectResult d;
        if (in.contains("observables")) {
            std::vector<Mat> obs;
            for (const auto& o : in.at("observables")) obs.push_back(matrix_from(o));
            d = nplayer_defect_operator(obs);
        } else {
            d = defect_operator(matrix_from(in.at("a")), matrix_from(in.at("b")),
                                in.value("sign", 1));
        }
        out = defect_result_to_json(d);
        return d.spectrum.psd ? 0 : 2;
    });

    add_op_sub("schur", [matrix_from](const json& in, json& out) {
        const Mat t = matrix_from(in.at("t"));
        if (in.contains("c")) {
            out["residuals"] =
                schur3_residuals(t, matrix_from(in.at("a")), matrix_from(in.at("b")),
                                 matrix_from(in.at("c")));
        } else {
            std::vector<Mat> a, b;
            for (const auto& m : in.at("a")) a.push_back(matrix_from(m));
            for (const auto& m : in.at("b")) b.push_back(matrix_from(m));
            out["residuals"] = schur_residuals(t, a, b);
        }
        return 0;
    });

    add_op_sub("kernel", [matrix_from](const json& in, json& out) {
        std::vector<Mat> ops;
        for (const auto& m : in.at("ops")) ops.push_back(matrix_from(m));
        const KernelInvarianceReport rep = kernel_invariance(matrix_from(in.at("t")), ops);
        out["kernel_dim"] = rep.kernel_dim;
        out["residuals"] = rep.residuals;
        out["invariant"] = rep.invariant;
        return rep.invariant ? 0 : 2;
    });

    add_op_sub("oddprod", [matrix_from](const json& in, json& out) {
        const int n = in.at("n").get<int>();
        std::vector<Mat> fam;
        if (in.contains("tilded"))
            for (const auto& m : in.at("tilded")) fam.push_back(matrix_from(m));
        else
            fam = odd_tilde_family(n);
        const OddProductReport rep = odd_product_expansion(fam, n);
        out["block_identity_deviation"] = rep.block_identity_deviation;
        out["state_action_deviation"] = rep.state_action_deviation;
        out["construction"] = rep.construction;
        return rep.block_identity_deviation <= 1e-10 ? 0 : 2;
    });

    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return exit_code;
}
