#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ngl/frac.hpp"
#include "ngl/linalg.hpp"

namespace ngl {

enum class PayoffKind { Sign, Predicate };

// Referee description: question sets, question distribution and payoff.
// Tensors are dense, row-major over question tuples (player-major,
// lexicographic within each player's label list).
struct GameSpec {
    int players = 2;
    std::vector<std::vector<std::string>> question_sets;
    std::vector<double> distribution;               // per question tuple
    std::optional<std::vector<Frac>> distribution_exact;
    PayoffKind payoff_kind = PayoffKind::Sign;
    std::vector<double> sign_tensor;                // ±1 per question tuple (Sign games)
    std::vector<std::vector<std::string>> answer_sets;  // Predicate games
    std::vector<std::uint8_t> predicate;            // [question tuple][answer tuple]

    std::vector<int> question_counts() const;
    std::vector<int> answer_counts() const;
    long long question_cells() const;
    long long answer_cells() const;
    long long tuple_to_flat(const std::vector<int>& q) const;
    std::vector<int> flat_to_tuple(long long flat) const;

    double prob(long long flat) const { return distribution[static_cast<size_t>(flat)]; }
    bool win(long long qflat, long long aflat) const;  // Predicate games
    bool is_xor() const { return payoff_kind == PayoffKind::Sign; }

    // Throws std::invalid_argument when any invariant fails.
    void validate() const;
};

struct GameTensor {
    std::vector<int> shape;       // question counts per player
    std::vector<double> entries;  // π·V, dense row-major
    double normalization = 0.0;   // Σ|entries|

    long long cells() const;
    double at(const std::vector<int>& q) const;
    // Bipartite view, rows = player 1 questions.
    RMat as_matrix() const;
};

struct SymmetrizedMatrix {
    RMat matrix;  // ½[0 Gᵀ; G 0], size rows+cols
};

GameSpec build_chsh(int n);
GameSpec build_odd_cycle(int n);
GameSpec build_ffl();
GameSpec build_xor_game(std::vector<std::vector<std::string>> question_sets,
                        std::vector<double> sign_tensor,
                        std::vector<double> distribution,
                        std::optional<std::vector<Frac>> distribution_exact = std::nullopt);

GameTensor game_tensor(const GameSpec& game);
SymmetrizedMatrix symmetrize(const GameTensor& tensor);

// Reference constants: chsh_d_upper, torpedo_classical, torpedo_quantum,
// torpedo_ratio.
double reference_bounds(const std::string& kind, int d);

// Canonical label helpers. A pair question (i,j) carries label "i.j"
// (1-based); question-tuple keys across players join labels with commas.
std::string tuple_label(const std::vector<int>& tuple);
std::vector<int> parse_tuple_label(const std::string& label);

// Converts an XOR game to an equivalent predicate game over ±1 answers
// encoded as {0,1} (answer bit a ↔ sign (−1)^a).
GameSpec xor_to_predicate(const GameSpec& game);

}  // namespace ngl
