#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "intension/state.hpp"

namespace intension {

// Strong Kleene truth values, ordered FALSE < INDETERMINATE < TRUE.
enum class Truth3 : std::uint8_t { False = 0, Indeterminate = 1, True = 2 };

struct Literal {
    int index = 0;       // variable index
    bool polarity = false; // asserted value

    auto operator<=>(const Literal&) const = default;
};

// Disjunction of literals, at most one per variable, ascending index.
// Canonical order across clauses: ascending width, then lexicographic on
// the (index, polarity) tuples.
class Clause {
public:
    static Clause of(std::vector<Literal> literals);
    // Builds the clause whose literals sit on `mask` with asserted values
    // taken from `polarities` (restricted to mask).
    static Clause from_bits(std::uint32_t mask, std::uint32_t polarities);

    const std::vector<Literal>& literals() const { return literals_; }
    int width() const { return static_cast<int>(literals_.size()); }
    int max_index() const { return literals_.back().index; }
    std::uint32_t index_mask() const { return mask_; }
    std::uint32_t polarity_bits() const { return polarities_; }

    Truth3 eval(const PartialState& s) const;

    // Fast path for complete states given as value bits: the clause fails
    // exactly when every literal mismatches.
    bool accepts_complete(std::uint32_t values) const {
        return ((values ^ polarities_) & mask_) != mask_;
    }

    std::string text() const; // e.g. "(x0=1|x3=0)"

    std::strong_ordering operator<=>(const Clause& other) const;
    bool operator==(const Clause& other) const { return literals_ == other.literals_; }

private:
    std::vector<Literal> literals_;
    std::uint32_t mask_ = 0;
    std::uint32_t polarities_ = 0;
};

// Conjunction of clauses in canonical order; empty sentence is vacuously
// true. Every clause width is bounded by width_bound.
class Sentence {
public:
    Sentence() = default;
    Sentence(std::vector<Clause> clauses, int width_bound);
    static Sentence of(std::vector<Clause> clauses); // bound = max clause width

    const std::vector<Clause>& clauses() const { return clauses_; }
    bool empty() const { return clauses_.empty(); }
    int width_bound() const { return width_bound_; }
    int max_index() const; // -1 when empty

    Truth3 eval(const PartialState& s) const;
    bool accepts_complete(std::uint32_t values) const {
        for (const auto& c : clauses_)
            if (!c.accepts_complete(values)) return false;
        return true;
    }

    std::string text() const; // "&"-joined clauses, "TRUE" when empty

    bool operator==(const Sentence& other) const { return clauses_ == other.clauses_; }

private:
    std::vector<Clause> clauses_;
    int width_bound_ = 0;
};

Truth3 eval_literal(const Literal& lit, const PartialState& s);
Truth3 eval_sentence(const Sentence& h, const PartialState& s);

// Exact number of complete states the sentence accepts, by enumeration
// with per-clause early rejection.
std::uint64_t count_models(const Sentence& h, const VariableSpace& space);

// All clauses of width 1..k over the space, in canonical order. The count
// is sum over w of C(n,w) * 2^w.
std::vector<Clause> clause_universe(const VariableSpace& space, int k);

// All complete supersequences of s accepted by h, lexicographic order.
std::vector<PartialState> satisfying_completions(const Sentence& h, const PartialState& s);

} // namespace intension
