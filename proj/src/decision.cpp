#include "intension/decision.hpp"

#include <algorithm>

namespace intension {

namespace {

// Lex-least member of the (sorted) extensional set that extends s.
std::optional<PartialState> lookup_first(const std::vector<PartialState>& states,
                                         const PartialState& s) {
    for (const auto& g : states)
        if (is_subsequence(s, g)) return g;
    return std::nullopt;
}

std::optional<PartialState> sentence_lex_first(const Sentence& h, const PartialState& s) {
    int n = s.variable_count();
    std::vector<int> free_indices;
    for (int i = 0; i < n; ++i)
        if (!s.is_defined(i)) free_indices.push_back(i);
    int f = static_cast<int>(free_indices.size());
    if (f > kMaxVariables) fail(ErrorKind::TooManyFree, "too many free variables");
    std::uint32_t mask = PartialState::mask_all(n);
    for (std::uint64_t counter = 0; counter < (1ull << f); ++counter) {
        std::uint32_t values = s.value_bits();
        for (int j = 0; j < f; ++j)
            if ((counter >> (f - 1 - j)) & 1ull) values |= 1u << free_indices[j];
        if (h.accepts_complete(values)) return PartialState(n, mask, values);
    }
    return std::nullopt;
}

} // namespace

std::optional<PartialState> abduct(const Solution& sol, const PartialState& s,
                                   const AbductionPolicy& policy, RngStream* rng) {
    if (!sol.is_sentence()) return lookup_first(sol.states, s);

    if (sol.sentence.max_index() >= s.variable_count())
        fail(ErrorKind::SpaceMismatch, "solution references variables outside the state space");

    switch (policy.kind) {
        case PolicyKind::LexFirst:
            return sentence_lex_first(sol.sentence, s);
        case PolicyKind::Uniform: {
            if (!rng) fail(ErrorKind::InvalidPolicy, "uniform abduction needs an rng stream");
            auto accepted = satisfying_completions(sol.sentence, s);
            if (accepted.empty()) return std::nullopt;
            return accepted[rng->below(accepted.size())];
        }
        case PolicyKind::ExtensionalFirst: {
            if (!policy.lookup || policy.lookup->is_sentence())
                fail(ErrorKind::InvalidPolicy,
                     "extensional-first abduction needs an attached extensional solution");
            if (auto hit = lookup_first(policy.lookup->states, s)) return hit;
            return sentence_lex_first(sol.sentence, s);
        }
    }
    return std::nullopt;
}

Outcome decision_trial(const Task& task, const Solution& sol, const PartialState& s,
                       const AbductionPolicy& policy, RngStream* rng) {
    if (s.variable_count() != task.space.size())
        fail(ErrorKind::SpaceMismatch, "initial state over a different variable space");
    Outcome out;
    out.initial = s;
    auto b = abduct(sol, s, policy, rng);
    if (!b) {
        out.no_completion = true;
        return out;
    }
    out.decision = b;
    out.success = task.contains_goal(*b);
    return out;
}

double generalization_rate(const Task& task, const Solution& sol,
                           const std::vector<PartialState>& eval_set,
                           const AbductionPolicy& policy, RngStream* rng) {
    if (eval_set.empty()) fail(ErrorKind::EmptyEvalSet, "empty evaluation set");
    int successes = 0;
    for (const auto& s : eval_set)
        if (decision_trial(task, sol, s, policy, rng).success) ++successes;
    return static_cast<double>(successes) / static_cast<double>(eval_set.size());
}

} // namespace intension
