#pragma once

#include <string>
#include <vector>

#include "ngl/games.hpp"
#include "ngl/linalg.hpp"

namespace ngl {

struct SdpProblem {
    RMat objective;                 // symmetric C
    std::vector<RMat> constraints;  // symmetric F_i
    std::vector<double> rhs;        // c_i

    void validate(double tol = 1e-12) const;
};

struct DualCertificate {
    std::vector<double> y;
    RMat op;          // Σ y_i E_ii − G_Sym
    double min_eig = 0.0;
    bool psd = false;  // min_eig ≥ −1e−9
};

struct GapReport {
    double gap_value = 0.0;
    std::string classification;  // vanishing | weak | infeasible
    double primal_value = 0.0;
    double dual_value = 0.0;
};

struct FeasibilityReport {
    double min_eig = 0.0;
    double max_violation = 0.0;
    double objective = 0.0;
    bool feasible = false;
};

struct QuantumBiasOptions {
    double tol = 1e-10;
    int restarts = 16;
    int max_sweeps = 100000;
    std::uint64_t seed = 1;
    // When the smaller side has at most this many questions, deterministic
    // ±e₁ sign-pattern starts are added; they dominate every deterministic
    // strategy, which pins the classical/quantum sandwich.
    int sign_start_limit = 12;
};

struct QuantumBiasResult {
    double bias = 0.0;
    std::vector<RVec> u;  // per row question
    std::vector<RVec> v;  // per column question
    int winning_restart = -1;
    int sweeps = 0;
    // Objective after every half-sweep of the winning restart (monotone).
    std::vector<double> trace;
};

// Tsirelson bias of a bipartite XOR game by alternating closed-form updates
// v_t ← normalize(Σ_s G_st u_s), u_s ← normalize(Σ_t G_st v_t), best over
// restarts.
QuantumBiasResult quantum_bias_bipartite(const GameTensor& tensor, const QuantumBiasOptions& opt = {});

FeasibilityReport primal_feasibility(const SdpProblem& problem, const RMat& z, double tol = 1e-9);

// Blockwise-constant dual vectors: block b of {1..N} holds
// ω^reps/(N!·n(n−1)…(n−b+1)); ffl_wedge holds 1/(3n), 1/(3n(n−1)).
// Families: 3xor, 4xor, 5xor, nxor, nxor_wedge, ffl_wedge.
std::vector<double> reference_dual_y(const std::string& family, int n, int players = 0,
                                 int reps = 1, double omega = 1.0);

DualCertificate dual_certificate_audit(const RMat& g_sym, const std::vector<double>& y);

GapReport duality_gap(const SdpProblem& problem, const RMat& z, const std::vector<double>& y,
                      const RMat& g, double tol = 1e-9);

// Flattens player 1 against the joint index of players 2..N, then applies the
// bipartite block form. N-player games only get this audit-facing shape.
SymmetrizedMatrix flatten_symmetrize(const GameTensor& tensor);

// Tsirelson relaxation of a bipartite game: C = G_Sym, F_i = E_ii, c_i = 1.
SdpProblem tsirelson_relaxation(const GameTensor& tensor);

// Gram matrix of the stacked (v, u) solver vectors, ordered to match G_Sym.
RMat gram_from_vectors(const QuantumBiasResult& sol);

// Independent min-eigenvalue estimate: the best of `samples` seeded random
// Rayleigh quotients, refined by shifted inverse iteration.
double rayleigh_min_oracle(const RMat& m, int samples = 10000, std::uint64_t seed = 12345);

}  // namespace ngl
