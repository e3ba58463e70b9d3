#include "ngl/sdp.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ngl {

void SdpProblem::validate(double tol) const {
    const Eigen::Index n = objective.rows();
    if (objective.cols() != n) throw std::invalid_argument("SdpProblem: objective not square");
    if ((objective - objective.transpose()).norm() > tol)
        throw std::invalid_argument("SdpProblem: objective not symmetric");
    if (constraints.size() != rhs.size())
        throw std::invalid_argument("SdpProblem: constraints/rhs size mismatch");
    for (const auto& f : constraints) {
        if (f.rows() != n || f.cols() != n)
            throw std::invalid_argument("SdpProblem: constraint size mismatch");
        if ((f - f.transpose()).norm() > tol)
            throw std::invalid_argument("SdpProblem: constraint not symmetric");
    }
}

namespace {

double objective_value(const RMat& g, const std::vector<RVec>& u, const std::vector<RVec>& v) {
    double acc = 0.0;
    for (Eigen::Index s = 0; s < g.rows(); ++s)
        for (Eigen::Index t = 0; t < g.cols(); ++t)
            if (g(s, t) != 0.0) acc += g(s, t) * u[static_cast<size_t>(s)].dot(v[static_cast<size_t>(t)]);
    return acc;
}

struct RunOutcome {
    double value;
    std::vector<RVec> u, v;
    int sweeps;
    std::vector<double> trace;
};

RunOutcome run_alternating(const RMat& g, std::vector<RVec> u, std::vector<RVec> v,
                           double tol, int max_sweeps) {
    const Eigen::Index rows = g.rows(), cols = g.cols();
    RunOutcome out;
    out.trace.push_back(objective_value(g, u, v));
    double prev = out.trace.back();
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        for (Eigen::Index t = 0; t < cols; ++t) {
            RVec w = RVec::Zero(u[0].size());
            for (Eigen::Index s = 0; s < rows; ++s)
                if (g(s, t) != 0.0) w += g(s, t) * u[static_cast<size_t>(s)];
            const double nw = w.norm();
            if (nw > 0.0) v[static_cast<size_t>(t)] = w / nw;  // zero column: keep previous vector
        }
        out.trace.push_back(objective_value(g, u, v));
        for (Eigen::Index s = 0; s < rows; ++s) {
            RVec w = RVec::Zero(v[0].size());
            for (Eigen::Index t = 0; t < cols; ++t)
                if (g(s, t) != 0.0) w += g(s, t) * v[static_cast<size_t>(t)];
            const double nw = w.norm();
            if (nw > 0.0) u[static_cast<size_t>(s)] = w / nw;
        }
        out.trace.push_back(objective_value(g, u, v));
        const double cur = out.trace.back();
        if (cur - prev < tol) { ++sweep; break; }
        prev = cur;
    }
    out.value = out.trace.back();
    out.u = std::move(u);
    out.v = std::move(v);
    out.sweeps = sweep;
    return out;
}

}  // namespace

QuantumBiasResult quantum_bias_bipartite(const GameTensor& tensor, const QuantumBiasOptions& opt) {
    if (tensor.shape.size() != 2)
        throw std::domain_error("quantum_bias_bipartite: bipartite XOR tensors only");
    const RMat g = tensor.as_matrix();
    const int rows = tensor.shape[0], cols = tensor.shape[1];
    const int dim = std::max(1, std::min(rows, cols));

    Rng rng(opt.seed);
    QuantumBiasResult best;
    best.bias = -2.0;
    int restart_index = 0;

    auto consider = [&](std::vector<RVec> u, std::vector<RVec> v) {
        RunOutcome out = run_alternating(g, std::move(u), std::move(v), opt.tol, opt.max_sweeps);
        if (out.value > best.bias) {
            best.bias = out.value;
            best.u = std::move(out.u);
            best.v = std::move(out.v);
            best.winning_restart = restart_index;
            best.sweeps = out.sweeps;
            best.trace = std::move(out.trace);
        }
        ++restart_index;
    };

    for (int r = 0; r < opt.restarts; ++r) {
        std::vector<RVec> u(static_cast<size_t>(rows)), v(static_cast<size_t>(cols));
        for (auto& x : u) x = rng.random_real_unit(dim);
        for (auto& x : v) x = rng.random_real_unit(dim);
        consider(std::move(u), std::move(v));
    }

    // Deterministic ±e₁ starts on the smaller side: the first closed-form
    // update already reaches max_b Σ_t |Σ_s G_st a_s| ≥ any deterministic
    // assignment's bias, so the solver provably dominates the classical value.
    const bool u_side = rows <= cols;
    const int side = u_side ? rows : cols;
    if (side <= opt.sign_start_limit) {
        for (long long mask = 0; mask < (1LL << side); ++mask) {
            std::vector<RVec> u(static_cast<size_t>(rows)), v(static_cast<size_t>(cols));
            for (auto& x : u) { x = RVec::Zero(dim); x(0) = 1.0; }
            for (auto& x : v) { x = RVec::Zero(dim); x(0) = 1.0; }
            auto& signed_side = u_side ? u : v;
            for (int i = 0; i < side; ++i)
                if ((mask >> i) & 1) signed_side[static_cast<size_t>(i)](0) = -1.0;
            if (!u_side) {
                // Ascend u first so the sign pattern on v is what gets answered.
                std::swap(u, v);
                RunOutcome out = run_alternating(g.transpose(), std::move(u), std::move(v), opt.tol, opt.max_sweeps);
                if (out.value > best.bias) {
                    best.bias = out.value;
                    best.u = std::move(out.v);
                    best.v = std::move(out.u);
                    best.winning_restart = restart_index;
                    best.sweeps = out.sweeps;
                    best.trace = std::move(out.trace);
                }
                ++restart_index;
            } else {
                consider(std::move(u), std::move(v));
            }
        }
    }
    return best;
}

FeasibilityReport primal_feasibility(const SdpProblem& problem, const RMat& z, double tol) {
    problem.validate();
    if (z.rows() != problem.objective.rows() || z.cols() != problem.objective.cols())
        throw std::invalid_argument("primal_feasibility: size mismatch");
    FeasibilityReport rep;
    rep.min_eig = hermitian_eigenvalues(z.cast<cxd>()).minCoeff();
    rep.max_violation = 0.0;
    for (size_t i = 0; i < problem.constraints.size(); ++i) {
        const double val = (problem.constraints[i].array() * z.array()).sum();
        rep.max_violation = std::max(rep.max_violation, std::abs(val - problem.rhs[i]));
    }
    rep.objective = (problem.objective.array() * z.array()).sum();
    rep.feasible = rep.min_eig >= -tol && rep.max_violation <= tol;
    return rep;
}

std::vector<double> reference_dual_y(const std::string& family, int n, int players, int reps,
                                 double omega) {
    if (n < 2) throw std::invalid_argument("reference_dual_y: n must be >= 2");
    if (reps < 1) throw std::invalid_argument("reference_dual_y: reps must be >= 1");

    if (family == "ffl_wedge") {
        std::vector<double> y(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i) y[static_cast<size_t>(i)] = 1.0 / (3.0 * n);
        for (size_t i = static_cast<size_t>(n); i < y.size(); ++i)
            y[i] = 1.0 / (3.0 * n * (n - 1.0));
        return y;
    }

    int N = players;
    bool wedge = false;
    if (family == "3xor") N = 3;
    else if (family == "4xor") N = 4;
    else if (family == "5xor") N = 5;
    else if (family == "nxor") { /* N from players */ }
    else if (family == "nxor_wedge") wedge = true;
    else throw std::invalid_argument("reference_dual_y: unknown family '" + family + "'");
    if (N < 2) throw std::invalid_argument("reference_dual_y: players must be >= 2 for family " + family);
    if (n < N) throw std::invalid_argument("reference_dual_y: need n >= N");

    const double scale = wedge ? std::pow(omega, reps) : omega;
    long long len = 1;
    for (int b = 0; b < N; ++b) len *= n;
    std::vector<double> y(static_cast<size_t>(len));
    double fact = 1.0;
    for (int b = 2; b <= N; ++b) fact *= b;

    long long block_end = 1;
    double falling = 1.0;
    long long idx = 0;
    for (int b = 1; b <= N; ++b) {
        block_end *= n;
        falling *= (n - b + 1);
        const double value = scale / (fact * falling);
        for (; idx < block_end; ++idx) y[static_cast<size_t>(idx)] = value;
    }
    return y;
}

DualCertificate dual_certificate_audit(const RMat& g_sym, const std::vector<double>& y) {
    if (static_cast<Eigen::Index>(y.size()) != g_sym.rows() || g_sym.rows() != g_sym.cols())
        throw std::invalid_argument("dual_certificate_audit: |y| must equal the matrix size");
    DualCertificate cert;
    cert.y = y;
    cert.op = -g_sym;
    for (Eigen::Index i = 0; i < g_sym.rows(); ++i) cert.op(i, i) += y[static_cast<size_t>(i)];
    cert.min_eig = hermitian_eigenvalues(cert.op.cast<cxd>()).minCoeff();
    cert.psd = cert.min_eig >= -1e-9;
    return cert;
}

GapReport duality_gap(const SdpProblem& problem, const RMat& z, const std::vector<double>& y,
                      const RMat& g, double tol) {
    problem.validate();
    if (y.size() != problem.constraints.size())
        throw std::invalid_argument("duality_gap: |y| must match the constraint count");
    if (g.rows() != z.rows() || g.cols() != z.cols())
        throw std::invalid_argument("duality_gap: shape mismatch");

    RMat dual_op = -g;
    for (size_t i = 0; i < y.size(); ++i) dual_op += y[i] * problem.constraints[i];

    GapReport rep;
    rep.gap_value = (dual_op.array() * z.array()).sum();
    rep.primal_value = (g.array() * z.array()).sum();
    rep.dual_value = 0.0;
    for (size_t i = 0; i < y.size(); ++i) rep.dual_value += y[i] * problem.rhs[i];

    const FeasibilityReport primal = primal_feasibility(problem, z, tol);
    const double dual_min_eig = hermitian_eigenvalues(dual_op.cast<cxd>()).minCoeff();
    if (!primal.feasible || dual_min_eig < -tol) rep.classification = "infeasible";
    else if (std::abs(rep.gap_value) <= tol) rep.classification = "vanishing";
    else rep.classification = "weak";
    return rep;
}

SymmetrizedMatrix flatten_symmetrize(const GameTensor& tensor) {
    if (tensor.shape.size() == 2) return symmetrize(tensor);
    const long long rows = tensor.shape[0];
    long long cols = 1;
    for (size_t p = 1; p < tensor.shape.size(); ++p) cols *= tensor.shape[p];
    GameTensor flat;
    flat.shape = {static_cast<int>(rows), static_cast<int>(cols)};
    flat.entries = tensor.entries;  // dense row-major: player 1 is already the slow index
    flat.normalization = tensor.normalization;
    return symmetrize(flat);
}

SdpProblem tsirelson_relaxation(const GameTensor& tensor) {
    const SymmetrizedMatrix sym = flatten_symmetrize(tensor);
    SdpProblem p;
    p.objective = sym.matrix;
    const Eigen::Index n = sym.matrix.rows();
    p.constraints.reserve(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        RMat e = RMat::Zero(n, n);
        e(i, i) = 1.0;
        p.constraints.push_back(std::move(e));
        p.rhs.push_back(1.0);
    }
    return p;
}

RMat gram_from_vectors(const QuantumBiasResult& sol) {
    const Eigen::Index cols = static_cast<Eigen::Index>(sol.v.size());
    const Eigen::Index rows = static_cast<Eigen::Index>(sol.u.size());
    const Eigen::Index dim = sol.u.empty() ? 0 : sol.u[0].size();
    RMat stacked(cols + rows, dim);
    for (Eigen::Index t = 0; t < cols; ++t) stacked.row(t) = sol.v[static_cast<size_t>(t)].transpose();
    for (Eigen::Index s = 0; s < rows; ++s) stacked.row(cols + s) = sol.u[static_cast<size_t>(s)].transpose();
    return stacked * stacked.transpose();
}

double rayleigh_min_oracle(const RMat& m, int samples, std::uint64_t seed) {
    if (m.rows() != m.cols()) throw std::invalid_argument("rayleigh_min_oracle: square matrices only");
    const Eigen::Index n = m.rows();
    Rng rng(seed);

    // Keep the few best samples as refinement seeds.
    constexpr int kSeeds = 20;
    std::vector<std::pair<double, RVec>> best;
    for (int i = 0; i < samples; ++i) {
        RVec v = rng.random_real_unit(static_cast<int>(n));
        const double q = v.dot(m * v);
        if (best.size() < kSeeds) {
            best.emplace_back(q, v);
            std::sort(best.begin(), best.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        } else if (q < best.back().first) {
            best.back() = {q, v};
            std::sort(best.begin(), best.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
    }

    double result = best.front().first;
    for (const auto& [q0, v0] : best) {
        // Shifted inverse (Rayleigh-quotient) iteration.
        RVec v = v0;
        double q = q0;
        for (int it = 0; it < 60; ++it) {
            RMat shifted = m - q * RMat::Identity(n, n);
            // Regularize exact shifts.
            Eigen::FullPivLU<RMat> lu(shifted);
            RVec w = lu.isInvertible() ? RVec(lu.solve(v))
                                       : RVec((shifted + 1e-14 * RMat::Identity(n, n)).fullPivLu().solve(v));
            const double nw = w.norm();
            if (!(nw > 0.0) || !std::isfinite(nw)) break;
            w /= nw;
            const double qn = w.dot(m * w);
            v = w;
            if (std::abs(qn - q) < 1e-14) { q = qn; break; }
            q = qn;
        }
        result = std::min(result, q);
    }
    return result;
}

}  // namespace ngl
