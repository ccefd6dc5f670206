#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "intension/logic.hpp"
#include "intension/state.hpp"

namespace intension {

enum class SolutionKind { Intensional, Strongest, Extensional };

enum class InfeasibilityMode { Error, BestEffort };

struct Provenance {
    std::string learner;
    int width_bound = 0;
    double fit_ms = 0.0;
    // Observed non-goal completions no sentence in the language can reject;
    // nonzero only for best-effort fits.
    int necessity_violations = 0;
};

// A fitted solution: a sentence (intensional or strongest) or an explicit
// state set (extensional), together with its weakness = the size of its
// extension over complete states.
struct Solution {
    SolutionKind kind = SolutionKind::Extensional;
    Sentence sentence;                 // meaningful for sentence kinds
    std::vector<PartialState> states;  // meaningful for Extensional, canonical order
    std::uint64_t weakness = 0;
    Provenance provenance;

    bool is_sentence() const { return kind != SolutionKind::Extensional; }
    bool accepts(const PartialState& complete) const;
    std::string text() const;
};

struct LearnerConfig {
    int width_bound = 1;
    // Candidate-clause ceiling for the exact subset search; above it the
    // fit falls back to greedy weakening. Subset search cost is 2^candidates.
    int exhaustive_threshold = 18;
    InfeasibilityMode infeasibility = InfeasibilityMode::Error;
};

// Closed world the fit is judged on: every complete supersequence of an
// observed initial state.
std::vector<PartialState> observed_frame(const OstensiveDefinition& o);

// h accepts exactly the sampled goals within the observed frame.
bool is_exact(const Sentence& h, const OstensiveDefinition& o);

// Lookup-table solution: accepts the sampled goals and nothing else.
Solution fit_extensional(const OstensiveDefinition& o);

// Conjunction of every width-bounded clause that holds on all sampled goals;
// the most specific sentence in the language containing the sample.
Solution fit_strongest(const OstensiveDefinition& o, const LearnerConfig& cfg);

// Weakest exact sentence in the language: maximum model count subject to
// accepting the sample and rejecting every other observed completion.
// Exact subset search below the candidate threshold, greedy weakening above.
Solution fit_intensional(const OstensiveDefinition& o, const LearnerConfig& cfg);

std::uint64_t weakness_of(const Solution& sol);

} // namespace intension
