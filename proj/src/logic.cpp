#include "intension/logic.hpp"

#include <algorithm>

namespace intension {

Clause Clause::of(std::vector<Literal> literals) {
    if (literals.empty()) fail(ErrorKind::BadWidth, "clause must contain at least one literal");
    std::sort(literals.begin(), literals.end());
    Clause c;
    for (const auto& lit : literals) {
        if (lit.index < 0 || lit.index >= 32)
            fail(ErrorKind::IndexOutOfRange, "literal index " + std::to_string(lit.index));
        if (c.mask_ & (1u << lit.index))
            fail(ErrorKind::DuplicateIndex,
                 "clause has two literals on index " + std::to_string(lit.index));
        c.mask_ |= 1u << lit.index;
        if (lit.polarity) c.polarities_ |= 1u << lit.index;
    }
    c.literals_ = std::move(literals);
    return c;
}

Clause Clause::from_bits(std::uint32_t mask, std::uint32_t polarities) {
    std::vector<Literal> lits;
    for (int i = 0; i < 32; ++i)
        if ((mask >> i) & 1u) lits.push_back({i, static_cast<bool>((polarities >> i) & 1u)});
    return of(std::move(lits));
}

Truth3 Clause::eval(const PartialState& s) const {
    Truth3 best = Truth3::False;
    for (const auto& lit : literals_) {
        Truth3 v = eval_literal(lit, s);
        if (v == Truth3::True) return Truth3::True;
        if (v > best) best = v;
    }
    return best;
}

std::string Clause::text() const {
    std::string out = "(";
    for (std::size_t i = 0; i < literals_.size(); ++i) {
        if (i) out += '|';
        out += "x" + std::to_string(literals_[i].index) + "=" + (literals_[i].polarity ? "1" : "0");
    }
    out += ')';
    return out;
}

std::strong_ordering Clause::operator<=>(const Clause& other) const {
    if (auto c = width() <=> other.width(); c != 0) return c;
    return literals_ <=> other.literals_;
}

Sentence::Sentence(std::vector<Clause> clauses, int width_bound) : width_bound_(width_bound) {
    for (const auto& c : clauses)
        if (c.width() > width_bound)
            fail(ErrorKind::BadWidth, "clause width " + std::to_string(c.width()) +
                                          " exceeds bound " + std::to_string(width_bound));
    std::sort(clauses.begin(), clauses.end());
    clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
    clauses_ = std::move(clauses);
}

Sentence Sentence::of(std::vector<Clause> clauses) {
    int bound = 0;
    for (const auto& c : clauses) bound = std::max(bound, c.width());
    return Sentence(std::move(clauses), bound);
}

int Sentence::max_index() const {
    int top = -1;
    for (const auto& c : clauses_) top = std::max(top, c.max_index());
    return top;
}

Truth3 Sentence::eval(const PartialState& s) const {
    Truth3 worst = Truth3::True;
    for (const auto& c : clauses_) {
        Truth3 v = c.eval(s);
        if (v == Truth3::False) return Truth3::False;
        if (v < worst) worst = v;
    }
    return worst;
}

std::string Sentence::text() const {
    if (clauses_.empty()) return "TRUE";
    std::string out;
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
        if (i) out += '&';
        out += clauses_[i].text();
    }
    return out;
}

Truth3 eval_literal(const Literal& lit, const PartialState& s) {
    if (lit.index < 0 || lit.index >= s.variable_count())
        fail(ErrorKind::IndexOutOfRange, "literal index " + std::to_string(lit.index));
    if (!s.is_defined(lit.index)) return Truth3::Indeterminate;
    return s.value(lit.index) == lit.polarity ? Truth3::True : Truth3::False;
}

Truth3 eval_sentence(const Sentence& h, const PartialState& s) {
    if (h.max_index() >= s.variable_count())
        fail(ErrorKind::SpaceMismatch, "sentence references variables outside the state space");
    return h.eval(s);
}

std::uint64_t count_models(const Sentence& h, const VariableSpace& space) {
    int n = space.size();
    if (n > kMaxVariables) fail(ErrorKind::TooManyVariables, "space too large to enumerate");
    if (h.max_index() >= n)
        fail(ErrorKind::SpaceMismatch, "sentence references variables outside the space");
    std::uint64_t count = 0;
    for (std::uint64_t v = 0; v < (1ull << n); ++v)
        if (h.accepts_complete(static_cast<std::uint32_t>(v))) ++count;
    return count;
}

std::vector<Clause> clause_universe(const VariableSpace& space, int k) {
    int n = space.size();
    if (k < 1 || k > n)
        fail(ErrorKind::BadWidth, "clause width bound must be in [1, " + std::to_string(n) + "]");

    std::vector<Clause> out;
    std::vector<int> combo;
    for (int w = 1; w <= k; ++w) {
        combo.resize(w);
        for (int i = 0; i < w; ++i) combo[i] = i;
        for (;;) {
            for (std::uint32_t counter = 0; counter < (1u << w); ++counter) {
                std::vector<Literal> lits(w);
                for (int j = 0; j < w; ++j)
                    lits[j] = {combo[j], static_cast<bool>((counter >> (w - 1 - j)) & 1u)};
                out.push_back(Clause::of(std::move(lits)));
            }
            int i = w - 1;
            while (i >= 0 && combo[i] == n - w + i) --i;
            if (i < 0) break;
            ++combo[i];
            for (int j = i + 1; j < w; ++j) combo[j] = combo[j - 1] + 1;
        }
    }
    // Canonical order: width, then the literal tuples lexicographically.
    // Polarities interleave across index combinations, so a sort is needed.
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PartialState> satisfying_completions(const Sentence& h, const PartialState& s) {
    if (h.max_index() >= s.variable_count())
        fail(ErrorKind::SpaceMismatch, "sentence references variables outside the state space");
    std::vector<PartialState> out;
    for (const auto& b : completions(s))
        if (h.accepts_complete(b.value_bits())) out.push_back(b);
    return out;
}

} // namespace intension
