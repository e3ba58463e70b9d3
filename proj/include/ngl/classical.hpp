#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ngl/frac.hpp"
#include "ngl/games.hpp"

namespace ngl {

struct BudgetError : std::runtime_error {
    long long required;
    explicit BudgetError(long long req)
        : std::runtime_error("classical: strategy space needs " + std::to_string(req) +
                             " evaluations, over budget"),
          required(req) {}
};

struct ClassicalResult {
    double value = 0.0;                    // in the requested mode
    std::optional<Frac> value_exact;       // when the distribution is exact
    std::string mode;                      // "bias" | "winprob"
    // argmax_strategy[p][q] = answer index player p gives to question q
    std::vector<std::vector<int>> argmax_strategy;
    long long tie_count = 0;

    double bias() const;
    double winprob() const;
};

struct ClassicalOptions {
    std::string mode = "winprob";
    long long budget = 1LL << 30;
    bool exhaustive = false;   // disables pruning
    int threads = 0;           // 0 = NGL_THREADS or hardware default
};

ClassicalResult classical_value(const GameSpec& game, const ClassicalOptions& opt = {});

// Value of the k-fold repeated game under the all-copies win rule; players
// map question k-tuples to answer k-tuples (correlated across copies).
ClassicalResult classical_value_repeated(const GameSpec& game, int k,
                                         const ClassicalOptions& opt = {});

}  // namespace ngl
