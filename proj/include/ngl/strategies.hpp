#pragma once

#include <string>
#include <vector>

#include "ngl/games.hpp"
#include "ngl/linalg.hpp"

namespace ngl {

// Shared state plus per-player ±1 observables. Observables are keyed by the
// player's question index in the owning game (the same canonical ordered
// distinct-tuple ordering the game builders use); an empty matrix marks a
// missing observable.
struct QuantumStrategy {
    std::vector<int> local_dims;
    Vec state;
    std::vector<std::vector<Mat>> observables;
    // For repeated strategies: per player and question, the per-copy ±1
    // factors whose tensor product is the observable above. Only the
    // Born-rule evaluation of multi-copy predicate games needs them; they
    // are an in-memory aid and are not serialized.
    std::vector<std::vector<std::vector<Mat>>> obs_factors;

    const Mat& obs(int player, long long question) const {
        return observables[static_cast<size_t>(player)][static_cast<size_t>(question)];
    }
    bool has_obs(int player, long long question) const {
        const auto& row = observables[static_cast<size_t>(player)];
        return question >= 0 && question < static_cast<long long>(row.size()) &&
               row[static_cast<size_t>(question)].size() != 0;
    }

    // ‖O−O†‖_F and ‖O²−I‖_F must both stay below tol for every observable;
    // ‖ψ‖ must be 1. Throws on violation.
    void validate(double obs_tol = 1e-9, double state_tol = 1e-10) const;
};

struct SchmidtReport {
    std::vector<double> coefficients;  // descending singular values
    int block_size = 1;
    double within_block_spread = 0.0;
    bool partial_block = false;
};

// Per-term bookkeeping for nplayer_bell: sign flips from Z, bit-flip
// ("tilde") transforms from X.
struct BellTermAnnotation {
    int term = 0;          // which one-excitation basis term
    int sign = 1;          // accumulated ±1 from Z actions
    bool tilded = false;   // an X acted on this term
};

struct AnnotatedState {
    Vec state;
    std::vector<BellTermAnnotation> annotations;
};

Vec bell_chsh2(int which);

// Pairwise-anticommuting ±1 observables on dimension 2^⌊n/2⌋
// (gamma-matrix construction; first two are σ_z, σ_x).
std::vector<Mat> anticommuting_family(int n);

// B_jk = ((A_j + A_k)/√2)ᵀ, B_kj = ((A_j − A_k)/√2)ᵀ. `ok` flags whether the
// outputs square to identity (they do iff the inputs anticommute).
void derived_b_observables(const Mat& a_j, const Mat& a_k, Mat& b_jk, Mat& b_kj,
                           bool* ok = nullptr, double tol = 1e-9);

QuantumStrategy optimal_chsh_strategy(int n);

double eval_bias(const QuantumStrategy& strategy, const GameSpec& game);
double eval_win_prob(const QuantumStrategy& strategy, const GameSpec& game);

Mat vectorize(const Vec& state, int dim_a, int dim_b);

SchmidtReport schmidt_blocks(const Vec& state, int dim_a, int dim_b, int block_size);

AnnotatedState nplayer_bell(const std::vector<std::string>& pauli_word, int players);

}  // namespace ngl
