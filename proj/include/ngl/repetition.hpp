#pragma once

#include "ngl/games.hpp"
#include "ngl/strategies.hpp"

namespace ngl {

enum class RepetitionRule { AndWin, XorCombine };

// k simultaneous copies. and_win: players win iff every copy's predicate
// holds (PredicateTable product game). xor_combine: sign tensors multiply
// (Kronecker power) and the question distribution is the product.
struct RepetitionSpec {
    GameSpec base;
    int copies = 1;
    RepetitionRule rule = RepetitionRule::AndWin;
    long long budget = 1LL << 22;  // output cells
};

GameSpec repeat_game(const RepetitionSpec& spec);

// ψ^{⊗k} with local factors regrouped player-major, copy-minor; observables
// per question k-tuple are tensor products of the per-copy observables.
QuantumStrategy repeat_strategy(const QuantumStrategy& strategy, int k,
                                long long budget = 1LL << 22);

const char* repetition_rule_name(RepetitionRule rule);

}  // namespace ngl
