#pragma once

#include <optional>
#include <vector>

#include "intension/learner.hpp"
#include "intension/rng.hpp"
#include "intension/state.hpp"

namespace intension {

enum class PolicyKind {
    LexFirst,          // lexicographically least accepted completion
    Uniform,           // uniform over accepted completions, rng required
    ExtensionalFirst,  // lookup hit wins, otherwise LexFirst on the sentence
};

struct AbductionPolicy {
    PolicyKind kind = PolicyKind::LexFirst;
    // Extensional solution consulted by ExtensionalFirst when the primary
    // solution is a sentence.
    std::optional<Solution> lookup;
};

struct Outcome {
    PartialState initial;
    std::optional<PartialState> decision;
    bool success = false;
    bool no_completion = false;
};

// Picks a complete supersequence of s the solution accepts, or nothing when
// no accepted completion exists.
std::optional<PartialState> abduct(const Solution& sol, const PartialState& s,
                                   const AbductionPolicy& policy, RngStream* rng = nullptr);

// One decision: abduct, then score membership in the task goals. Nothing
// after the chosen state matters.
Outcome decision_trial(const Task& task, const Solution& sol, const PartialState& s,
                       const AbductionPolicy& policy, RngStream* rng = nullptr);

// Fraction of eval states whose decision trial succeeds.
double generalization_rate(const Task& task, const Solution& sol,
                           const std::vector<PartialState>& eval_set,
                           const AbductionPolicy& policy, RngStream* rng = nullptr);

} // namespace intension
