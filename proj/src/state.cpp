#include "intension/state.hpp"

#include <algorithm>
#include <set>

namespace intension {

VariableSpace::VariableSpace(int n) : n_(n) {
    if (n < 1 || n > kMaxVariables)
        fail(ErrorKind::TooManyVariables,
             "variable count must be in [1, " + std::to_string(kMaxVariables) + "], got " +
                 std::to_string(n));
}

VariableSpace::VariableSpace(int n, std::vector<std::string> names) : VariableSpace(n) {
    if (!names.empty()) {
        if (static_cast<int>(names.size()) != n)
            fail(ErrorKind::BadSpec, "expected " + std::to_string(n) + " names, got " +
                                         std::to_string(names.size()));
        std::set<std::string> distinct(names.begin(), names.end());
        if (static_cast<int>(distinct.size()) != n)
            fail(ErrorKind::BadSpec, "variable names must be distinct");
    }
    names_ = std::move(names);
}

std::string VariableSpace::name(int index) const {
    if (index < 0 || index >= n_)
        fail(ErrorKind::IndexOutOfRange, "variable index " + std::to_string(index));
    if (has_names()) return names_[index];
    return "x" + std::to_string(index);
}

PartialState PartialState::parse(int n, std::string_view pattern) {
    if (static_cast<int>(pattern.size()) != n)
        fail(ErrorKind::ParseError, "pattern length " + std::to_string(pattern.size()) +
                                        " does not match variable count " + std::to_string(n));
    std::uint32_t defined = 0, values = 0;
    for (int i = 0; i < n; ++i) {
        char c = pattern[i];
        if (c == '*') continue;
        if (c != '0' && c != '1')
            fail(ErrorKind::ParseError, std::string("bad pattern character '") + c + "'");
        defined |= 1u << i;
        if (c == '1') values |= 1u << i;
    }
    return PartialState(n, defined, values);
}

PartialState PartialState::with(int index, bool v) const {
    PartialState out = *this;
    out.defined_ |= 1u << index;
    if (v)
        out.values_ |= 1u << index;
    else
        out.values_ &= ~(1u << index);
    return out;
}

std::string PartialState::pattern() const {
    std::string out(static_cast<std::size_t>(n_), '*');
    for (int i = 0; i < n_; ++i)
        if (is_defined(i)) out[i] = value(i) ? '1' : '0';
    return out;
}

std::strong_ordering PartialState::operator<=>(const PartialState& other) const {
    if (auto c = n_ <=> other.n_; c != 0) return c;
    for (int i = 0; i < n_; ++i) {
        int a = is_defined(i) ? (value(i) ? 2 : 1) : 0;
        int b = other.is_defined(i) ? (other.value(i) ? 2 : 1) : 0;
        if (auto c = a <=> b; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

PartialState make_state(const VariableSpace& space,
                        const std::vector<std::pair<int, bool>>& assignments) {
    PartialState s(space.size());
    for (auto [index, bit] : assignments) {
        if (index < 0 || index >= space.size())
            fail(ErrorKind::IndexOutOfRange, "assignment index " + std::to_string(index));
        if (s.is_defined(index))
            fail(ErrorKind::DuplicateIndex, "duplicate assignment to index " + std::to_string(index));
        s = s.with(index, bit);
    }
    return s;
}

bool is_subsequence(const PartialState& a, const PartialState& b) {
    if (a.variable_count() != b.variable_count())
        fail(ErrorKind::SpaceMismatch, "states over different variable spaces");
    std::uint32_t da = a.defined_bits();
    if ((da & b.defined_bits()) != da) return false;
    return (a.value_bits() & da) == (b.value_bits() & da);
}

std::vector<PartialState> completions(const PartialState& s) {
    int n = s.variable_count();
    std::vector<int> free_indices;
    for (int i = 0; i < n; ++i)
        if (!s.is_defined(i)) free_indices.push_back(i);
    int f = static_cast<int>(free_indices.size());
    if (f > kMaxVariables)
        fail(ErrorKind::TooManyFree, std::to_string(f) + " free variables");

    std::vector<PartialState> out;
    out.reserve(1ull << f);
    std::uint32_t mask = PartialState::mask_all(n);
    for (std::uint64_t counter = 0; counter < (1ull << f); ++counter) {
        std::uint32_t values = s.value_bits();
        // counter bit (f-1-j) drives free index j, so output order is
        // lexicographic on the value vector.
        for (int j = 0; j < f; ++j)
            if ((counter >> (f - 1 - j)) & 1ull) values |= 1u << free_indices[j];
        out.push_back(PartialState(n, mask, values));
    }
    return out;
}

PartialState restrict_to(const PartialState& g, const std::vector<int>& frame) {
    int n = g.variable_count();
    std::uint32_t keep = 0;
    for (int index : frame) {
        if (index < 0 || index >= n)
            fail(ErrorKind::IndexOutOfRange, "frame index " + std::to_string(index));
        keep |= 1u << index;
    }
    keep &= g.defined_bits();
    return PartialState(n, keep, g.value_bits() & keep);
}

bool Task::contains_goal(const PartialState& complete) const {
    return std::binary_search(goals.begin(), goals.end(), complete);
}

namespace {

void sort_unique(std::vector<PartialState>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

Task build_task(const VariableSpace& space,
                const std::vector<PartialState>& goal_patterns,
                std::vector<std::vector<int>> frames,
                std::string id) {
    if (goal_patterns.empty()) fail(ErrorKind::EmptyGoalSet, "no goal patterns");
    if (frames.empty()) fail(ErrorKind::BadSpec, "at least one decision frame required");

    for (auto& frame : frames) {
        for (int index : frame)
            if (index < 0 || index >= space.size())
                fail(ErrorKind::IndexOutOfRange, "frame index " + std::to_string(index));
        std::sort(frame.begin(), frame.end());
        frame.erase(std::unique(frame.begin(), frame.end()), frame.end());
    }
    std::sort(frames.begin(), frames.end());
    frames.erase(std::unique(frames.begin(), frames.end()), frames.end());

    Task task{space, {}, std::move(frames), {}, std::move(id)};
    for (const auto& pattern : goal_patterns) {
        if (pattern.variable_count() != space.size())
            fail(ErrorKind::SpaceMismatch, "goal pattern over wrong variable count");
        for (auto& g : completions(pattern)) task.goals.push_back(g);
    }
    sort_unique(task.goals);

    for (const auto& frame : task.frames)
        for (const auto& g : task.goals) task.initials.push_back(restrict_to(g, frame));
    sort_unique(task.initials);

    // Holds by construction; re-checked because everything downstream leans on it.
    for (const auto& s : task.initials) {
        bool ok = false;
        for (const auto& g : task.goals)
            if (is_subsequence(s, g)) {
                ok = true;
                break;
            }
        if (!ok) fail(ErrorKind::EmptyGoalSet, "initial state without goal supersequence");
    }
    return task;
}

OstensiveDefinition sample_ostensive(const Task& task, int m, RngStream& rng) {
    int total = static_cast<int>(task.goals.size());
    if (m < 1 || m >= total)
        fail(ErrorKind::SampleTooLarge,
             "sample size must be in [1, " + std::to_string(total - 1) + "], got " +
                 std::to_string(m));

    // Partial Fisher-Yates over goal indices.
    std::vector<int> indices(task.goals.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = static_cast<int>(i);
    for (int i = 0; i < m; ++i) {
        int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(total - i)));
        std::swap(indices[i], indices[j]);
    }

    OstensiveDefinition o{task.space, {}, {}, false};
    for (int i = 0; i < m; ++i) o.sample.push_back(task.goals[indices[i]]);
    sort_unique(o.sample);

    for (const auto& frame : task.frames)
        for (const auto& g : o.sample) o.initials.push_back(restrict_to(g, frame));
    sort_unique(o.initials);

    o.covers_all = true;
    for (const auto& s : task.initials) {
        bool covered = false;
        for (const auto& g : o.sample)
            if (is_subsequence(s, g)) {
                covered = true;
                break;
            }
        if (!covered) {
            o.covers_all = false;
            break;
        }
    }
    return o;
}

} // namespace intension
