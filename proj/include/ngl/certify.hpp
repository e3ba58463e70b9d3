#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ngl/games.hpp"
#include "ngl/strategies.hpp"

namespace ngl {

struct EpsilonEntry {
    std::string bound_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs − lhs
    bool pass = false;    // margin ≥ −tol
    bool degenerate = false;
    std::string note;
};

struct EpsilonReport {
    double epsilon = 0.0;
    std::vector<EpsilonEntry> entries;  // ordered by bound_id
    double strategy_bias = 0.0;
    double optimal_bias = 0.0;

    bool all_pass() const;
    void sort_entries();
};

// Smallest ε with (1−ε)·β(G) ≤ β(G,S), clamped at 0.
double measure_epsilon(const QuantumStrategy& strategy, const GameSpec& game, double optimal_bias);
double measure_epsilon_from_bias(double strategy_bias, double optimal_bias);

// CHSH(n)-shaped access: player 1 holds A_i per question i, player 2 holds
// B_ij per ordered pair in canonical order. N-player strategies extend this
// with arity-k observables for player k.
struct CertifyOptions {
    double tol = 1e-8;
    double c1 = 1.0 / 50.0;     // Lemma-3 constant, overridable
    double omega = 2.0 / 3.0;   // optimal value plugged into ω-dependent bounds
    int sample_limit = 64;      // exponent vectors sampled per product bound
    std::uint64_t seed = 7;
};

// Theorem-1 sums, both tensor arrangements; RHS = 2n(n−1)ε each.
std::vector<EpsilonEntry> check_bipartite_bounds(const QuantumStrategy& s, int n, double eps,
                                                 const CertifyOptions& opt = {});

// Interchange families generalized over N players by symmetric-group
// enumeration; each family sum vs N!·n·∏_{j<N}(n−j)·ε.
std::vector<EpsilonEntry> check_nxor_bounds(const QuantumStrategy& s, int players, int n,
                                            double eps, const CertifyOptions& opt = {});

// Σ‖({A_i,A_j}/2 ⊗ I…)ψ‖²; family "ffl": RHS 2(7/3)²n(n−1)ε, family "nxor":
// RHS C₁·n·∏(n−j)·ε.
std::vector<EpsilonEntry> check_anticommutator(const QuantumStrategy& s, const std::string& family,
                                               int n, int players, double eps,
                                               const CertifyOptions& opt = {});

// Sign-operator relations ‖(A_k⊗I)ψ − (I⊗sgn(B_kl+B_lk))ψ‖ (and the minus
// arrangement against A_l) vs 17√(nε); ∧-forms for rep strategies vs
// 20√(Nε), 18√(Nε), 20N√(Nε).
std::vector<EpsilonEntry> check_sqrt_bounds(const QuantumStrategy& s, double eps, int reps = 1,
                                            const CertifyOptions& opt = {});

// Flipped-exponent product consistency
// ‖[(∏A^j)A_p − (−1)^{swaps}∏A^{j⊕e_p}]⊗I…ψ‖ vs (100/9)n²√ε; N-player and
// wedge variants report their closed-form RHS with ω supplied.
std::vector<EpsilonEntry> check_permutation_bounds(const QuantumStrategy& s, double eps,
                                                   const CertifyOptions& opt = {});

// Composite second error bound: ‖(∏A^j ⊗ B_kl ⊗ I…)ψ − ω[(sign_k∏A^{j⊕e_k} +
// sign_l∏A^{j⊕e_l})⊗I…]ψ‖ with per-term anticommutation-swap signs; RHS per
// family (ffl: (8200√2/27)n²√ε; 3/4/5/N-XOR: 1000n³√ε, 100000n⁴√ε, 1000√2n⁵√ε,
// N!n^N√ε·parity; wedge: 130N!n^N√ε·parity).
std::vector<EpsilonEntry> check_second_bound(const QuantumStrategy& s, const std::string& family,
                                             double eps, const CertifyOptions& opt = {});

// ‖A_i·T − T·Ã_i‖_F per observable (Ã defaults to the transpose, the
// vectorization partner); RHS 9n²√ε·‖T‖_F, explicit pairs (44/3)n²√ε·‖T‖_F,
// aggregate 5(Nn^N)²√ε.
std::vector<EpsilonEntry> check_frobenius_intertwiner(const QuantumStrategy& s,
                                                      std::optional<Mat> t_opt, double eps,
                                                      const CertifyOptions& opt = {},
                                                      const std::vector<Mat>* tilde = nullptr);

// Σ_k‖(u_k·A⃗ ⊗ I…)ψ − (I… ⊗ v_k·B⃗)ψ‖² vs β·ε.
std::vector<EpsilonEntry> check_uv_bound(const QuantumStrategy& s,
                                         const std::vector<RVec>& u_list,
                                         const std::vector<RVec>& v_list, double eps, double beta,
                                         const CertifyOptions& opt = {});

// Σ over label swaps of one player's observables; vanishes whenever that
// player's observables are question-independent (padded identities).
double label_swap_residual(const QuantumStrategy& s, int player);

// Full report for a CHSH(n)-shaped strategy: Theorem-1, interchange,
// anticommutator (ffl + nxor families), √ε, permutation, second-bound
// (ω = optimal bias), intertwiner and the Theorem-1 u/v family. `family`
// picks the ω-dependent second-bound flavor: "xor"/"ffl" (default), "nxor",
// or "wedge".
EpsilonReport certify_chsh_strategy(const QuantumStrategy& s, const GameSpec& game,
                                    double optimal_bias, const CertifyOptions& opt = {},
                                    const std::string& family = "xor");

int chsh_questions_from_strategy(const QuantumStrategy& s);

}  // namespace ngl
