#include <doctest.h>

#include <algorithm>

#include "intension/learner.hpp"
#include "intension/tasks.hpp"

using namespace intension;

namespace {

PartialState ps(int n, const char* pattern) { return PartialState::parse(n, pattern); }

OstensiveDefinition make_ostensive(int n, std::vector<const char*> sample,
                                   std::vector<const char*> initials, bool covers = false) {
    OstensiveDefinition o{VariableSpace(n), {}, {}, covers};
    for (const char* p : sample) o.sample.push_back(ps(n, p));
    for (const char* p : initials) o.initials.push_back(ps(n, p));
    std::sort(o.sample.begin(), o.sample.end());
    std::sort(o.initials.begin(), o.initials.end());
    return o;
}

// Reference answer for the weakest exact fit: enumerate every subset of the
// strongest clause set with plain sentence evaluation. Only usable when the
// strongest set is small.
std::uint64_t weakest_by_enumeration(const OstensiveDefinition& o, int k, bool* feasible) {
    std::vector<Clause> base;
    for (const auto& c : clause_universe(o.space, k)) {
        bool ok = true;
        for (const auto& g : o.sample)
            if (c.eval(g) != Truth3::True) ok = false;
        if (ok) base.push_back(c);
    }
    REQUIRE(base.size() <= 14);
    auto frame = observed_frame(o);
    std::uint64_t best = 0;
    *feasible = false;
    for (std::uint32_t mask = 0; mask < (1u << base.size()); ++mask) {
        std::vector<Clause> subset;
        for (std::size_t i = 0; i < base.size(); ++i)
            if ((mask >> i) & 1u) subset.push_back(base[i]);
        Sentence h = Sentence::of(std::move(subset));
        bool exact = true;
        for (const auto& c : frame) {
            bool accepted = eval_sentence(h, c) == Truth3::True;
            bool member = std::binary_search(o.sample.begin(), o.sample.end(), c);
            if (accepted != member) exact = false;
        }
        if (!exact) continue;
        *feasible = true;
        best = std::max(best, static_cast<std::uint64_t>(
                                  satisfying_completions(h, PartialState(o.space.size())).size()));
    }
    return best;
}

} // namespace

TEST_CASE("observed frame is the union of completions") {
    auto o1 = make_ostensive(2, {"10"}, {"1*"});
    auto frame1 = observed_frame(o1);
    REQUIRE(frame1.size() == 2);
    CHECK(frame1[0].pattern() == "10");
    CHECK(frame1[1].pattern() == "11");

    auto o2 = make_ostensive(2, {"10"}, {"10"});
    auto frame2 = observed_frame(o2);
    REQUIRE(frame2.size() == 1);
    CHECK(frame2[0].pattern() == "10");

    Task addition = gen_binary_addition(1);
    RngStream rng(5);
    auto o3 = sample_ostensive(addition, 2, rng);
    CHECK(observed_frame(o3).size() == 2 * 4);
}

TEST_CASE("exactness on the observed frame") {
    auto o = make_ostensive(2, {"10"}, {"1*"});
    CHECK(is_exact(Sentence::of({Clause::of({{1, false}})}), o));
    CHECK_FALSE(is_exact(Sentence{}, o));
    CHECK_FALSE(is_exact(Sentence::of({Clause::of({{0, false}})}), o));
}

TEST_CASE("extensional fit is the sample itself") {
    auto o = make_ostensive(3, {"110"}, {"11*"});
    Solution sol = fit_extensional(o);
    CHECK(sol.states == o.sample);
    CHECK(sol.weakness == 1);
    CHECK(sol.accepts(ps(3, "110")));
    CHECK_FALSE(sol.accepts(ps(3, "111")));

    Task addition = gen_binary_addition(1);
    OstensiveDefinition loo{addition.space,
                            {addition.goals.begin(), addition.goals.end() - 1},
                            {},
                            false};
    for (const auto& g : loo.sample) loo.initials.push_back(restrict_to(g, addition.frames[0]));
    std::sort(loo.initials.begin(), loo.initials.end());
    CHECK(fit_extensional(loo).weakness == 3);
}

TEST_CASE("strongest fit keeps every clause that holds on the sample") {
    LearnerConfig cfg{2, 18, InfeasibilityMode::Error};
    auto o = make_ostensive(2, {"10", "11"}, {"1*"});
    Solution sol = fit_strongest(o, cfg);
    CHECK(sol.weakness == 2);
    // Independent route: filter the eight clauses by hand evaluation.
    std::vector<Clause> expect;
    for (const auto& c : clause_universe(o.space, 2)) {
        bool keeps = c.eval(ps(2, "10")) == Truth3::True && c.eval(ps(2, "11")) == Truth3::True;
        if (keeps) expect.push_back(c);
    }
    CHECK(sol.sentence.clauses() == expect);
    auto models = satisfying_completions(sol.sentence, PartialState(2));
    REQUIRE(models.size() == 2);
    CHECK(models[0].pattern() == "10");
    CHECK(models[1].pattern() == "11");

    // Sample covering the whole cube leaves nothing to assert.
    auto full = make_ostensive(3, {"000", "001", "010", "011", "100", "101", "110", "111"},
                               {"***"}, true);
    Solution empty = fit_strongest(full, LearnerConfig{1, 18, InfeasibilityMode::Error});
    CHECK(empty.sentence.empty());
    CHECK(empty.weakness == 8);

    auto single = make_ostensive(1, {"1"}, {"1"});
    Solution one = fit_strongest(single, LearnerConfig{1, 18, InfeasibilityMode::Error});
    CHECK(one.sentence.text() == "(x0=1)");
    CHECK(one.weakness == 1);
}

TEST_CASE("intensional fit finds the weakest exact sentence") {
    auto o = make_ostensive(2, {"10"}, {"1*"});
    LearnerConfig cfg{1, 18, InfeasibilityMode::Error};
    Solution sol = fit_intensional(o, cfg);
    CHECK(sol.sentence.text() == "(x1=0)");
    CHECK(sol.weakness == 2);
    CHECK(is_exact(sol.sentence, o));

    Solution strongest = fit_strongest(o, cfg);
    CHECK(strongest.weakness == 1);
    CHECK(weakness_of(sol) == 2);
    CHECK(weakness_of(strongest) == 1);
}

TEST_CASE("intensional fit on a fully observed task pins the goal set") {
    Task parity = gen_parity(3);
    OstensiveDefinition o{parity.space, parity.goals, parity.initials, true};
    LearnerConfig cfg{3, 18, InfeasibilityMode::Error};
    Solution sol = fit_intensional(o, cfg);
    CHECK(is_exact(sol.sentence, o));
    std::vector<PartialState> accepted;
    for (const auto& c : observed_frame(o))
        if (sol.sentence.accepts_complete(c.value_bits())) accepted.push_back(c);
    CHECK(accepted == parity.goals);
}

TEST_CASE("leave-one-out addition stays exact") {
    Task addition = gen_binary_addition(1);
    for (std::size_t skip = 0; skip < addition.goals.size(); ++skip) {
        OstensiveDefinition o{addition.space, {}, {}, false};
        for (std::size_t i = 0; i < addition.goals.size(); ++i)
            if (i != skip) o.sample.push_back(addition.goals[i]);
        for (const auto& g : o.sample) o.initials.push_back(restrict_to(g, addition.frames[0]));
        std::sort(o.initials.begin(), o.initials.end());

        LearnerConfig cfg{4, 18, InfeasibilityMode::Error};
        Solution weakest = fit_intensional(o, cfg);
        Solution strongest = fit_strongest(o, cfg);
        CHECK(is_exact(weakest.sentence, o));
        CHECK(weakest.weakness >= strongest.weakness);
    }
}

TEST_CASE("no-negative samples relax to the empty sentence") {
    auto o = make_ostensive(4, {"0000", "0001", "0010", "0011"}, {"00**"}, false);
    Solution sol = fit_intensional(o, LearnerConfig{4, 18, InfeasibilityMode::Error});
    CHECK(sol.sentence.empty());
    CHECK(sol.weakness == 16);
}

TEST_CASE("exhaustive search matches independent subset enumeration") {
    // Candidate sets stay tiny here, so the reference can walk all subsets.
    auto cases = std::vector<std::pair<OstensiveDefinition, int>>{
        {make_ostensive(3, {"110"}, {"1**"}), 1},
        {make_ostensive(3, {"101", "110"}, {"1**"}), 1},
        {make_ostensive(2, {"10"}, {"1*"}), 1},
        {make_ostensive(2, {"10"}, {"1*"}), 2},
        {make_ostensive(3, {"010", "011"}, {"01*", "*1*"}), 2},
    };
    for (auto& [o, k] : cases) {
        bool feasible = false;
        std::uint64_t expect = weakest_by_enumeration(o, k, &feasible);
        LearnerConfig cfg{k, 18, InfeasibilityMode::Error};
        if (!feasible) {
            CHECK_THROWS_AS(fit_intensional(o, cfg), Error);
            continue;
        }
        Solution sol = fit_intensional(o, cfg);
        CHECK(sol.weakness == expect);
        CHECK(is_exact(sol.sentence, o));
    }
}

TEST_CASE("greedy path stays exact and never beats the exhaustive optimum") {
    RngStream rng(77);
    for (int round = 0; round < 20; ++round) {
        int n = 3 + static_cast<int>(rng.below(2));
        VariableSpace space(n);
        std::vector<PartialState> patterns;
        int count = 2 + static_cast<int>(rng.below(3));
        for (int i = 0; i < count; ++i)
            patterns.push_back(
                PartialState::complete_state(n, static_cast<std::uint32_t>(rng.below(1u << n))));
        std::vector<int> frame;
        for (int i = 0; i + 1 < n; ++i) frame.push_back(i);
        Task task;
        try {
            task = build_task(space, patterns, {frame});
        } catch (const Error&) {
            continue;
        }
        if (task.goals.size() < 2) continue;
        RngStream sampler(round);
        auto o = sample_ostensive(task, static_cast<int>(task.goals.size()) - 1, sampler);

        LearnerConfig exhaustive{n, 30, InfeasibilityMode::BestEffort};
        LearnerConfig greedy{n, 0, InfeasibilityMode::BestEffort};
        Solution a = fit_intensional(o, exhaustive);
        Solution b = fit_intensional(o, greedy);
        CHECK(b.weakness <= a.weakness);
        if (a.provenance.necessity_violations == 0) {
            CHECK(is_exact(a.sentence, o));
            CHECK(is_exact(b.sentence, o));
        }
    }
}

TEST_CASE("infeasible width errors or degrades by mode") {
    auto o = make_ostensive(2, {"00", "11"}, {"0*", "1*"});
    LearnerConfig hard{1, 18, InfeasibilityMode::Error};
    CHECK_THROWS_AS(fit_intensional(o, hard), Error);
    try {
        fit_intensional(o, hard);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ExactnessInfeasible);
    }

    LearnerConfig soft{1, 18, InfeasibilityMode::BestEffort};
    Solution sol = fit_intensional(o, soft);
    CHECK(sol.provenance.necessity_violations == 2);
    CHECK_FALSE(is_exact(sol.sentence, o));
    for (const auto& g : o.sample) CHECK(sol.accepts(g));
}

TEST_CASE("fits are deterministic") {
    Task task = gen_parity(3);
    RngStream r1(19), r2(19);
    auto o1 = sample_ostensive(task, 2, r1);
    auto o2 = sample_ostensive(task, 2, r2);
    LearnerConfig cfg{3, 18, InfeasibilityMode::Error};
    Solution a = fit_intensional(o1, cfg);
    Solution b = fit_intensional(o2, cfg);
    CHECK(a.sentence == b.sentence);
    CHECK(a.weakness == b.weakness);
    CHECK(a.text() == b.text());
}
