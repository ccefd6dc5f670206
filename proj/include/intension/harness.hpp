#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "intension/decision.hpp"
#include "intension/learner.hpp"
#include "intension/state.hpp"

namespace intension {

enum class EvalMode { FullS, Heldout };

struct ExperimentConfig {
    Task task;
    // Subset of {"intensional","strongest","extensional"}; rows are emitted
    // in this canonical order regardless of how the subset is written.
    std::vector<std::string> learners = {"intensional", "strongest", "extensional"};
    std::vector<int> sample_sizes;
    int trials = 1;
    std::uint64_t master_seed = 1;
    int width_bound = 0;  // 0 = variable count
    PolicyKind policy = PolicyKind::LexFirst;
    EvalMode eval_mode = EvalMode::Heldout;
    double epsilon = 0.02;
    bool abort_on_error = false;
    InfeasibilityMode infeasibility = InfeasibilityMode::Error;
    int exhaustive_threshold = 18;
};

struct CurvePoint {
    std::string task_id;
    std::string learner;
    int m = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::optional<double> rate;          // empty when the fit errored
    std::optional<std::uint64_t> weakness;
    bool exact = false;
    double fit_ms = 0.0;
};

// One row per (m, trial, learner), deterministic order and content. Within a
// trial every learner is fitted on the same ostensive sample (paired
// comparison); the trial seed is mix_seed(master, fnv1a64(task id), m, trial).
// Fit errors are recorded as exact=false with empty rate unless
// abort_on_error is set. An empty held-out set scores 0.0.
std::vector<CurvePoint> run_curve(const ExperimentConfig& cfg);

// Fixed schema: task,learner,m,trial,seed,rate,weakness,exact,fit_ms with
// rates to six decimals and newline-terminated rows.
std::string to_csv(const std::vector<CurvePoint>& points);
std::vector<CurvePoint> parse_csv(const std::string& text);

struct DominanceRow {
    int m = 0;
    std::optional<double> intensional;
    std::optional<double> strongest;
    std::optional<double> extensional;
};

// Per-m mean rates and the verdict: PASS when the intensional mean is within
// epsilon of (or above) every comparator mean at every m.
struct DominanceReport {
    std::vector<DominanceRow> rows;
    bool pass = false;
    std::string text() const;
};

DominanceReport dominance_report(const std::vector<CurvePoint>& points, double epsilon);

// Uniformly random goal set over n variables (distinct complete states).
Task random_goal_task(int n, int goal_count, std::vector<int> frame, std::uint64_t seed);

// Draws ostensive samples until one covers every task initial; used by the
// degeneracy preset, which studies the fully observed regime.
OstensiveDefinition sample_ostensive_covering(const Task& task, int m, RngStream& rng,
                                              int max_attempts = 10000);

// Degeneracy preset: structure-free random tasks where nothing generalizes.
// n=8, |goals|=32, frame {0,1,2,3}, five fixed task seeds.
struct DegeneracyPreset {
    std::vector<std::uint64_t> task_seeds;
    std::vector<int> sample_sizes;
    int trials_per_size = 3;
    int width_bound = 8;
};

DegeneracyPreset degeneracy_preset();
Task degeneracy_task(std::uint64_t seed);

} // namespace intension
