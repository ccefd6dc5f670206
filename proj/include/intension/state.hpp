#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intension/error.hpp"
#include "intension/rng.hpp"

namespace intension {

inline constexpr int kMaxVariables = 24;

// The set of binary variables a task ranges over. Names are optional; when
// present they are distinct and index-aligned.
class VariableSpace {
public:
    VariableSpace() = default; // single-variable placeholder space
    explicit VariableSpace(int n);
    VariableSpace(int n, std::vector<std::string> names);

    int size() const { return n_; }
    bool has_names() const { return !names_.empty(); }
    const std::vector<std::string>& names() const { return names_; }
    std::string name(int index) const;

    friend bool operator==(const VariableSpace&, const VariableSpace&) = default;

private:
    int n_ = 1;
    std::vector<std::string> names_;
};

// A partial assignment of binary values. Two bit-vectors over the variable
// indices: `defined` marks assigned variables, `values` holds their bits.
// Canonical form: values & ~defined == 0, always.
class PartialState {
public:
    PartialState() = default;
    explicit PartialState(int n) : n_(n) {}
    PartialState(int n, std::uint32_t defined, std::uint32_t values)
        : n_(n), defined_(defined & mask_all(n)), values_(values & defined_ & mask_all(n)) {}

    static PartialState complete_state(int n, std::uint32_t values) {
        return PartialState(n, mask_all(n), values);
    }

    // Parses a pattern like "10*" (index 0 first). Throws ParseError.
    static PartialState parse(int n, std::string_view pattern);

    int variable_count() const { return n_; }
    bool is_defined(int index) const { return (defined_ >> index) & 1u; }
    bool value(int index) const { return (values_ >> index) & 1u; }
    bool is_complete() const { return defined_ == mask_all(n_); }
    int defined_count() const { return __builtin_popcount(defined_); }
    int free_count() const { return n_ - defined_count(); }

    std::uint32_t defined_bits() const { return defined_; }
    std::uint32_t value_bits() const { return values_; }

    // Copy with one more assignment; index must be currently unassigned.
    PartialState with(int index, bool v) const;

    std::string pattern() const;

    // Canonical order: position by position, '*' before '0' before '1'.
    // On complete states this is lexicographic order of the value vector.
    std::strong_ordering operator<=>(const PartialState& other) const;
    bool operator==(const PartialState& other) const = default;

    static std::uint32_t mask_all(int n) {
        return n >= 32 ? 0xFFFFFFFFu : ((1u << n) - 1u);
    }

private:
    int n_ = 0;
    std::uint32_t defined_ = 0;
    std::uint32_t values_ = 0;
};

PartialState make_state(const VariableSpace& space,
                        const std::vector<std::pair<int, bool>>& assignments);

// a is a subsequence of b: b assigns everything a assigns, with equal values.
bool is_subsequence(const PartialState& a, const PartialState& b);

// All complete supersequences of s, lexicographic on the value vector.
std::vector<PartialState> completions(const PartialState& s);

// Result defined exactly on frame ∩ defined(g), values copied.
PartialState restrict_to(const PartialState& g, const std::vector<int>& frame);

// A task: complete goal states plus decision frames. The initial states are
// the restrictions of the goals to each frame; every initial therefore has
// at least one goal supersequence.
struct Task {
    VariableSpace space;
    std::vector<PartialState> goals;        // complete, canonical order, unique
    std::vector<std::vector<int>> frames;   // each ascending; frames sorted
    std::vector<PartialState> initials;     // derived, canonical order, unique
    std::string id;                         // label for logs/CSV; not serialized

    bool contains_goal(const PartialState& complete) const;

    friend bool operator==(const Task& a, const Task& b) {
        return a.space == b.space && a.goals == b.goals && a.frames == b.frames &&
               a.initials == b.initials;
    }
};

// Goal patterns may be partial; they are expanded to all completions so the
// stored goal set is always complete states.
Task build_task(const VariableSpace& space,
                const std::vector<PartialState>& goal_patterns,
                std::vector<std::vector<int>> frames,
                std::string id = "task");

// A sampled subset of the goals plus the initial states it induces.
struct OstensiveDefinition {
    VariableSpace space;
    std::vector<PartialState> sample;    // proper subset of task goals
    std::vector<PartialState> initials;  // restrictions of the sample
    bool covers_all = false;             // sample covers every task initial
};

// Uniform m-subset of the goals, without replacement, 1 <= m < |goals|.
OstensiveDefinition sample_ostensive(const Task& task, int m, RngStream& rng);

} // namespace intension
