#include "intension/learner.hpp"

#include <algorithm>
#include <chrono>
#include <queue>

namespace intension {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t universe_count(int n, int k) {
    // sum over w of C(n,w) * 2^w
    std::uint64_t total = 0, binom = 1;
    for (int w = 1; w <= k; ++w) {
        binom = binom * static_cast<std::uint64_t>(n - w + 1) / static_cast<std::uint64_t>(w);
        total += binom << w;
    }
    return total;
}

constexpr std::uint64_t kUniverseCap = 1ull << 22;

void check_fit_preconditions(const OstensiveDefinition& o, const LearnerConfig& cfg) {
    int n = o.space.size();
    if (cfg.width_bound < 1) fail(ErrorKind::BadWidth, "width bound must be at least 1");
    if (cfg.width_bound > n)
        fail(ErrorKind::TooManyVariables,
             "width bound " + std::to_string(cfg.width_bound) + " exceeds variable count");
    if (universe_count(n, cfg.width_bound) > kUniverseCap)
        fail(ErrorKind::TooManyVariables, "clause universe too large for this space/width");
}

// Clauses of the bounded universe that hold on every sampled goal.
std::vector<Clause> strongest_clauses(const OstensiveDefinition& o, int k) {
    std::vector<std::uint32_t> positives;
    positives.reserve(o.sample.size());
    for (const auto& g : o.sample) positives.push_back(g.value_bits());

    std::vector<Clause> kept;
    for (auto& c : clause_universe(o.space, k)) {
        bool ok = true;
        for (std::uint32_t v : positives)
            if (!c.accepts_complete(v)) {
                ok = false;
                break;
            }
        if (ok) kept.push_back(std::move(c));
    }
    return kept;
}

// Enumerates the complete states a clause rejects (its false subcube).
template <typename Fn>
void for_each_rejected(const Clause& c, int n, Fn&& fn) {
    std::uint32_t base = ~c.polarity_bits() & c.index_mask();
    std::uint32_t free = PartialState::mask_all(n) & ~c.index_mask();
    std::uint32_t sub = free;
    for (;;) {
        fn(base | sub);
        if (sub == 0) break;
        sub = (sub - 1) & free;
    }
}

struct SearchProblem {
    int n = 0;
    std::vector<Clause> candidates;          // canonical order
    std::vector<std::uint32_t> negatives;    // value bits, sorted
};

// Exact subset search: maximum model count, then fewest clauses, then the
// subset that is lexicographically least on candidate indices.
std::vector<int> exhaustive_weakest(const SearchProblem& p) {
    const std::uint64_t cube = 1ull << p.n;
    const std::size_t words = static_cast<std::size_t>((cube + 63) / 64);
    const int count = static_cast<int>(p.candidates.size());

    std::vector<std::vector<std::uint64_t>> reject(count, std::vector<std::uint64_t>(words, 0));
    for (int i = 0; i < count; ++i)
        for_each_rejected(p.candidates[i], p.n,
                          [&](std::uint32_t z) { reject[i][z >> 6] |= 1ull << (z & 63); });

    std::uint64_t best_models = 0;
    int best_size = -1;
    std::uint32_t best_mask = 0;
    bool have_best = false;

    auto better = [&](std::uint64_t models, int size, std::uint32_t mask) {
        if (!have_best) return true;
        if (models != best_models) return models > best_models;
        if (size != best_size) return size < best_size;
        std::uint32_t diff = mask ^ best_mask;
        if (diff == 0) return false;
        return (mask & (diff & (0u - diff))) != 0; // owns the lowest differing index
    };

    std::vector<std::uint64_t> acc(words, 0);
    std::vector<std::vector<std::uint64_t>> saved(static_cast<std::size_t>(count) + 1);

    auto evaluate = [&](std::uint32_t mask, int size) {
        for (std::uint32_t z : p.negatives)
            if (!((acc[z >> 6] >> (z & 63)) & 1ull)) return; // negative not rejected
        std::uint64_t rejected = 0;
        for (std::size_t w = 0; w < words; ++w) rejected += __builtin_popcountll(acc[w]);
        std::uint64_t models = cube - rejected;
        if (better(models, size, mask)) {
            best_models = models;
            best_size = size;
            best_mask = mask;
            have_best = true;
        }
    };

    // Depth-first include/exclude over candidates.
    auto dfs = [&](auto&& self, int i, std::uint32_t mask, int size) -> void {
        if (i == count) {
            evaluate(mask, size);
            return;
        }
        self(self, i + 1, mask, size);
        saved[static_cast<std::size_t>(i)] = acc;
        for (std::size_t w = 0; w < words; ++w) acc[w] |= reject[static_cast<std::size_t>(i)][w];
        self(self, i + 1, mask | (1u << i), size + 1);
        acc = saved[static_cast<std::size_t>(i)];
    };
    dfs(dfs, 0, 0, 0);

    std::vector<int> chosen;
    for (int i = 0; i < count; ++i)
        if ((best_mask >> i) & 1u) chosen.push_back(i);
    return chosen;
}

// Greedy weakening: repeatedly drop the clause whose removal keeps the fit
// exact and frees the most complete states; ties drop the canonically last
// (most specific) clause. Runs until nothing is removable.
std::vector<int> greedy_weakest(const SearchProblem& p, std::uint64_t* models_out) {
    const std::uint64_t cube = 1ull << p.n;
    const int count = static_cast<int>(p.candidates.size());

    std::vector<std::int32_t> rejecters(cube, 0);  // active clauses rejecting each state
    std::vector<std::int32_t> last_seen(cube, -1);
    std::vector<char> negative(cube, 0);
    for (std::uint32_t z : p.negatives) negative[z] = 1;

    for (int i = 0; i < count; ++i)
        for_each_rejected(p.candidates[i], p.n, [&](std::uint32_t z) {
            ++rejecters[z];
            last_seen[z] = i;
        });

    // gain = states this clause alone still rejects; locked = such states
    // that are negatives (removing the clause would un-reject them).
    std::vector<std::uint64_t> gain(count, 0);
    std::vector<std::uint32_t> locked(count, 0);
    for (std::uint64_t z = 0; z < cube; ++z)
        if (rejecters[z] == 1) {
            int c = last_seen[z];
            ++gain[c];
            if (negative[z]) ++locked[c];
        }

    std::vector<char> active(count, 1);
    std::priority_queue<std::pair<std::uint64_t, int>> heap;
    for (int i = 0; i < count; ++i)
        if (locked[i] == 0) heap.push({gain[i], i});

    auto sole_active_rejecter = [&](std::uint32_t z) {
        for (int i = 0; i < count; ++i)
            if (active[i] && p.candidates[i].accepts_complete(z) == false) return i;
        return -1;
    };

    while (!heap.empty()) {
        auto [g, c] = heap.top();
        heap.pop();
        if (!active[c] || locked[c] > 0) continue;
        if (g != gain[c]) {
            heap.push({gain[c], c});
            continue;
        }
        active[c] = 0;
        for_each_rejected(p.candidates[c], p.n, [&](std::uint32_t z) {
            if (--rejecters[z] == 1) {
                int sole = sole_active_rejecter(z);
                ++gain[sole];
                if (negative[z])
                    ++locked[sole];
                else
                    heap.push({gain[sole], sole});
            }
        });
    }

    if (models_out) {
        std::uint64_t models = 0;
        for (std::uint64_t z = 0; z < cube; ++z)
            if (rejecters[z] == 0) ++models;
        *models_out = models;
    }
    std::vector<int> chosen;
    for (int i = 0; i < count; ++i)
        if (active[i]) chosen.push_back(i);
    return chosen;
}

} // namespace

bool Solution::accepts(const PartialState& complete) const {
    if (is_sentence()) return sentence.accepts_complete(complete.value_bits());
    return std::binary_search(states.begin(), states.end(), complete);
}

std::string Solution::text() const {
    if (is_sentence()) return sentence.text();
    std::string out = "{";
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (i) out += ',';
        out += states[i].pattern();
    }
    out += '}';
    return out;
}

std::vector<PartialState> observed_frame(const OstensiveDefinition& o) {
    std::vector<PartialState> out;
    for (const auto& s : o.initials)
        for (auto& b : completions(s)) out.push_back(b);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_exact(const Sentence& h, const OstensiveDefinition& o) {
    if (h.max_index() >= o.space.size())
        fail(ErrorKind::SpaceMismatch, "sentence references variables outside the space");
    for (const auto& c : observed_frame(o)) {
        bool accepted = h.accepts_complete(c.value_bits());
        bool member = std::binary_search(o.sample.begin(), o.sample.end(), c);
        if (accepted != member) return false;
    }
    return true;
}

Solution fit_extensional(const OstensiveDefinition& o) {
    auto start = Clock::now();
    Solution sol;
    sol.kind = SolutionKind::Extensional;
    sol.states = o.sample;
    sol.weakness = sol.states.size();
    sol.provenance = {"extensional", 0, 0.0, 0};
    sol.provenance.fit_ms = ms_since(start);
    return sol;
}

Solution fit_strongest(const OstensiveDefinition& o, const LearnerConfig& cfg) {
    auto start = Clock::now();
    check_fit_preconditions(o, cfg);
    Sentence h(strongest_clauses(o, cfg.width_bound), cfg.width_bound);
    Solution sol;
    sol.kind = SolutionKind::Strongest;
    sol.sentence = std::move(h);
    sol.weakness = count_models(sol.sentence, o.space);
    sol.provenance = {"strongest", cfg.width_bound, 0.0, 0};
    sol.provenance.fit_ms = ms_since(start);
    return sol;
}

Solution fit_intensional(const OstensiveDefinition& o, const LearnerConfig& cfg) {
    auto start = Clock::now();
    check_fit_preconditions(o, cfg);
    int n = o.space.size();

    std::vector<Clause> base = strongest_clauses(o, cfg.width_bound);

    // Negatives: observed completions outside the sampled goals.
    std::vector<std::uint32_t> negatives;
    for (const auto& c : observed_frame(o))
        if (!std::binary_search(o.sample.begin(), o.sample.end(), c))
            negatives.push_back(c.value_bits());
    std::sort(negatives.begin(), negatives.end());

    // Keep only clauses that reject at least one negative; the rest cannot
    // contribute to necessity. Track which negatives are rejectable at all.
    std::vector<char> covered(negatives.size(), 0);
    SearchProblem problem;
    problem.n = n;
    for (auto& c : base) {
        bool rejects_any = false;
        for (std::size_t i = 0; i < negatives.size(); ++i)
            if (!c.accepts_complete(negatives[i])) {
                covered[i] = 1;
                rejects_any = true;
            }
        if (rejects_any) problem.candidates.push_back(std::move(c));
    }

    int violations = 0;
    for (std::size_t i = 0; i < negatives.size(); ++i)
        if (covered[i])
            problem.negatives.push_back(negatives[i]);
        else
            ++violations;

    if (violations > 0 && cfg.infeasibility == InfeasibilityMode::Error)
        fail(ErrorKind::ExactnessInfeasible,
             std::to_string(violations) +
                 " observed non-goal completions cannot be rejected at width " +
                 std::to_string(cfg.width_bound));

    std::vector<int> chosen;
    std::uint64_t models = 0;
    // Subset search is 2^candidates; 30 is a hard ceiling on top of the
    // configured threshold so a generous config cannot hang the fit.
    bool exhaustive = static_cast<int>(problem.candidates.size()) <=
                      std::min(cfg.exhaustive_threshold, 30);
    if (exhaustive) {
        chosen = exhaustive_weakest(problem);
        std::vector<Clause> picked;
        for (int i : chosen) picked.push_back(problem.candidates[i]);
        Sentence h(picked, cfg.width_bound);
        models = count_models(h, o.space);
    } else {
        chosen = greedy_weakest(problem, &models);
    }

    std::vector<Clause> picked;
    picked.reserve(chosen.size());
    for (int i : chosen) picked.push_back(problem.candidates[i]);

    Solution sol;
    sol.kind = SolutionKind::Intensional;
    sol.sentence = Sentence(std::move(picked), cfg.width_bound);
    sol.weakness = models;
    sol.provenance = {"intensional", cfg.width_bound, 0.0, violations};
    sol.provenance.fit_ms = ms_since(start);
    return sol;
}

std::uint64_t weakness_of(const Solution& sol) { return sol.weakness; }

} // namespace intension
