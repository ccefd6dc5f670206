#include <doctest.h>

#include <algorithm>

#include "intension/logic.hpp"
#include "intension/rng.hpp"

using namespace intension;

namespace {

PartialState ps(int n, const char* pattern) { return PartialState::parse(n, pattern); }

Sentence random_sentence(RngStream& rng, int n, int max_width, int max_clauses) {
    int count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_clauses)));
    std::vector<Clause> clauses;
    for (int i = 0; i < count; ++i) {
        int width = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_width)));
        std::vector<Literal> lits;
        std::uint32_t used = 0;
        while (static_cast<int>(lits.size()) < width) {
            int index = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            if (used & (1u << index)) continue;
            used |= 1u << index;
            lits.push_back({index, rng.below(2) == 1});
        }
        clauses.push_back(Clause::of(std::move(lits)));
    }
    return Sentence::of(std::move(clauses));
}

PartialState random_partial(RngStream& rng, int n) {
    PartialState s(n);
    for (int i = 0; i < n; ++i)
        if (rng.below(2)) s = s.with(i, rng.below(2) == 1);
    return s;
}

} // namespace

TEST_CASE("literal evaluation is three-valued") {
    CHECK(eval_literal({0, true}, ps(2, "1*")) == Truth3::True);
    CHECK(eval_literal({0, true}, ps(2, "0*")) == Truth3::False);
    CHECK(eval_literal({1, false}, ps(2, "1*")) == Truth3::Indeterminate);
    CHECK_THROWS_AS(eval_literal({5, true}, ps(2, "1*")), Error);
}

TEST_CASE("sentence evaluation, strong Kleene") {
    Sentence empty;
    CHECK(eval_sentence(empty, ps(2, "**")) == Truth3::True);
    CHECK(eval_sentence(empty, ps(2, "01")) == Truth3::True);

    Sentence k = Sentence::of({Clause::of({{0, true}, {1, false}})});
    CHECK(eval_sentence(k, ps(2, "0*")) == Truth3::Indeterminate);

    Sentence both = Sentence::of({Clause::of({{0, true}}), Clause::of({{1, false}})});
    CHECK(eval_sentence(both, ps(2, "10")) == Truth3::True);

    Sentence far = Sentence::of({Clause::of({{3, true}})});
    CHECK_THROWS_AS(eval_sentence(far, ps(2, "10")), Error);
}

TEST_CASE("complete states never evaluate indeterminate") {
    RngStream rng(3);
    for (int round = 0; round < 200; ++round) {
        Sentence h = random_sentence(rng, 6, 3, 4);
        PartialState z = PartialState::complete_state(6, static_cast<std::uint32_t>(rng.below(64)));
        CHECK(eval_sentence(h, z) != Truth3::Indeterminate);
    }
}

TEST_CASE("Kleene persistence under refinement") {
    RngStream rng(17);
    for (int round = 0; round < 1000; ++round) {
        Sentence h = random_sentence(rng, 6, 3, 4);
        PartialState s = random_partial(rng, 6);
        PartialState refined = s;
        for (int i = 0; i < 6; ++i)
            if (!refined.is_defined(i) && rng.below(2)) refined = refined.with(i, rng.below(2) == 1);
        Truth3 before = eval_sentence(h, s);
        Truth3 after = eval_sentence(h, refined);
        if (before == Truth3::True) CHECK(after == Truth3::True);
        if (before == Truth3::False) CHECK(after == Truth3::False);
    }
}

TEST_CASE("count_models basics") {
    VariableSpace space(3);
    CHECK(count_models(Sentence{}, space) == 8);
    CHECK(count_models(Sentence::of({Clause::of({{0, true}})}), space) == 4);
}

TEST_CASE("count_models equals naive Kleene enumeration") {
    VariableSpace space(8);
    RngStream rng(23);
    for (int round = 0; round < 50; ++round) {
        Sentence h = random_sentence(rng, 8, 3, 6);
        std::uint64_t naive = 0;
        for (const auto& z : completions(PartialState(8)))
            if (eval_sentence(h, z) == Truth3::True) ++naive;
        CHECK(count_models(h, space) == naive);
    }
}

TEST_CASE("count_models equals satisfying completions of the empty state") {
    RngStream rng(29);
    VariableSpace space(6);
    for (int round = 0; round < 30; ++round) {
        Sentence h = random_sentence(rng, 6, 3, 4);
        CHECK(count_models(h, space) == satisfying_completions(h, PartialState(6)).size());
    }
}

TEST_CASE("adding clauses never increases the model count") {
    RngStream rng(31);
    VariableSpace space(6);
    for (int round = 0; round < 30; ++round) {
        Sentence small = random_sentence(rng, 6, 3, 3);
        auto clauses = small.clauses();
        Sentence grown = random_sentence(rng, 6, 3, 2);
        for (const auto& c : grown.clauses()) clauses.push_back(c);
        Sentence big = Sentence::of(std::move(clauses));
        CHECK(count_models(small, space) >= count_models(big, space));
    }
}

TEST_CASE("clause universe counts and order") {
    CHECK(clause_universe(VariableSpace(2), 1).size() == 4);
    CHECK(clause_universe(VariableSpace(2), 2).size() == 8);

    auto first = clause_universe(VariableSpace(3), 1).front();
    CHECK(first.text() == "(x0=0)");

    for (int n = 1; n <= 6; ++n) {
        VariableSpace space(n);
        for (int k = 1; k <= n; ++k) {
            std::uint64_t expect = 0, binom = 1;
            for (int w = 1; w <= k; ++w) {
                binom = binom * static_cast<std::uint64_t>(n - w + 1) /
                        static_cast<std::uint64_t>(w);
                expect += binom << w;
            }
            auto universe = clause_universe(space, k);
            CHECK(universe.size() == expect);
            CHECK(std::is_sorted(universe.begin(), universe.end()));
            CHECK(std::adjacent_find(universe.begin(), universe.end()) == universe.end());
        }
    }
    CHECK_THROWS_AS(clause_universe(VariableSpace(3), 0), Error);
    CHECK_THROWS_AS(clause_universe(VariableSpace(3), 4), Error);
}

TEST_CASE("satisfying completions") {
    Sentence h = Sentence::of({Clause::of({{1, false}})});
    auto sat = satisfying_completions(h, ps(2, "**"));
    REQUIRE(sat.size() == 2);
    CHECK(sat[0].pattern() == "00");
    CHECK(sat[1].pattern() == "10");

    auto open = satisfying_completions(Sentence{}, ps(2, "1*"));
    REQUIRE(open.size() == 2);
    CHECK(open[0].pattern() == "10");
    CHECK(open[1].pattern() == "11");

    Sentence blocked = Sentence::of({Clause::of({{0, true}})});
    CHECK(satisfying_completions(blocked, ps(2, "0*")).empty());
}

TEST_CASE("clause and sentence construction rules") {
    CHECK_THROWS_AS(Clause::of({}), Error);
    CHECK_THROWS_AS(Clause::of({{0, true}, {0, false}}), Error);
    CHECK(Clause::of({{3, false}, {0, true}}).text() == "(x0=1|x3=0)");

    Sentence s = Sentence::of({Clause::of({{1, false}}), Clause::of({{0, true}})});
    CHECK(s.text() == "(x0=1)&(x1=0)");
    CHECK(Sentence{}.text() == "TRUE");
    CHECK_THROWS_AS(Sentence({Clause::of({{0, true}, {1, true}})}, 1), Error);

    // Duplicate clauses collapse.
    Sentence d = Sentence::of({Clause::of({{0, true}}), Clause::of({{0, true}})});
    CHECK(d.clauses().size() == 1);
}
