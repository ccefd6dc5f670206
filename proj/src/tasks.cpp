#include "intension/tasks.hpp"

#include <algorithm>
#include <sstream>

namespace intension {

namespace {

// Writes `bits` bits of `value` at indices [start, start+bits), MSB first.
std::uint32_t place_field(std::uint32_t state, int start, int bits, std::uint32_t value) {
    for (int j = 0; j < bits; ++j)
        if ((value >> (bits - 1 - j)) & 1u) state |= 1u << (start + j);
    return state;
}

std::vector<int> index_range(int first, int count) {
    std::vector<int> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = first + i;
    return out;
}

void append_field_names(std::vector<std::string>& names, const std::string& prefix, int bits) {
    for (int j = 0; j < bits; ++j) names.push_back(prefix + std::to_string(bits - 1 - j));
}

} // namespace

Task gen_binary_addition(int w) {
    if (w < 1 || w > 3) fail(ErrorKind::BadWidth, "register width must be 1..3");
    int n = 3 * w + 1;
    std::vector<std::string> names;
    append_field_names(names, "a", w);
    append_field_names(names, "b", w);
    append_field_names(names, "s", w + 1);
    VariableSpace space(n, std::move(names));

    std::vector<PartialState> goals;
    for (std::uint32_t a = 0; a < (1u << w); ++a)
        for (std::uint32_t b = 0; b < (1u << w); ++b) {
            std::uint32_t bits = 0;
            bits = place_field(bits, 0, w, a);
            bits = place_field(bits, w, w, b);
            bits = place_field(bits, 2 * w, w + 1, a + b);
            goals.push_back(PartialState::complete_state(n, bits));
        }
    return build_task(space, goals, {index_range(0, 2 * w)}, "addition-w" + std::to_string(w));
}

Task gen_string_prediction(int length, int period) {
    if (length < 2 || length > 16 || period < 1 || period >= length)
        fail(ErrorKind::BadPeriod, "need 1 <= period < length <= 16");
    std::vector<std::string> names;
    for (int i = 0; i < length; ++i) names.push_back("c" + std::to_string(i));
    VariableSpace space(length, std::move(names));

    std::vector<PartialState> goals;
    for (std::uint32_t prefix = 0; prefix < (1u << period); ++prefix) {
        std::uint32_t bits = 0;
        for (int i = 0; i < length; ++i) {
            bool v = i < period ? ((prefix >> i) & 1u) : ((bits >> (i - period)) & 1u);
            if (v) bits |= 1u << i;
        }
        goals.push_back(PartialState::complete_state(length, bits));
    }
    return build_task(space, goals, {index_range(0, period)},
                      "prediction-L" + std::to_string(length) + "-p" + std::to_string(period));
}

Task gen_parity(int n) {
    if (n < 2 || n > 8) fail(ErrorKind::BadWidth, "parity size must be 2..8");
    std::vector<std::string> names;
    for (int i = 1; i < n; ++i) names.push_back("x" + std::to_string(i));
    names.push_back("y");
    VariableSpace space(n, std::move(names));

    std::vector<PartialState> goals;
    for (std::uint32_t xs = 0; xs < (1u << (n - 1)); ++xs) {
        std::uint32_t bits = xs;
        if (__builtin_popcount(xs) & 1) bits |= 1u << (n - 1);
        goals.push_back(PartialState::complete_state(n, bits));
    }
    return build_task(space, goals, {index_range(0, n - 1)}, "parity-n" + std::to_string(n));
}

std::string opcode_name(Opcode op) {
    switch (op) {
        case Opcode::Add: return "ADD";
        case Opcode::And: return "AND";
        case Opcode::Xor: return "XOR";
        case Opcode::Mov: return "MOV";
    }
    return "?";
}

Task gen_toycpu(const ToyCpuSpec& spec) {
    int w = spec.width;
    if (w < 1 || w > 3) fail(ErrorKind::BadSpec, "register width must be 1..3");
    if (spec.opcodes.empty()) fail(ErrorKind::BadSpec, "opcode set must be nonempty");
    std::vector<Opcode> ops = spec.opcodes;
    std::sort(ops.begin(), ops.end());
    ops.erase(std::unique(ops.begin(), ops.end()), ops.end());

    int n = 2 + 4 * w;
    std::vector<std::string> names = {"op1", "op0"};
    append_field_names(names, "r0pre", w);
    append_field_names(names, "r1pre", w);
    append_field_names(names, "r0post", w);
    append_field_names(names, "r1post", w);
    VariableSpace space(n, std::move(names));

    std::uint32_t reg_mask = (1u << w) - 1u;
    std::vector<PartialState> goals;
    for (Opcode op : ops)
        for (std::uint32_t r0 = 0; r0 <= reg_mask; ++r0)
            for (std::uint32_t r1 = 0; r1 <= reg_mask; ++r1) {
                std::uint32_t result = 0;
                switch (op) {
                    case Opcode::Add: result = (r0 + r1) & reg_mask; break;
                    case Opcode::And: result = r0 & r1; break;
                    case Opcode::Xor: result = r0 ^ r1; break;
                    case Opcode::Mov: result = r1; break;
                }
                std::uint32_t bits = 0;
                bits = place_field(bits, 0, 2, static_cast<std::uint32_t>(op));
                bits = place_field(bits, 2, w, r0);
                bits = place_field(bits, 2 + w, w, r1);
                bits = place_field(bits, 2 + 2 * w, w, result);
                bits = place_field(bits, 2 + 3 * w, w, r1);
                goals.push_back(PartialState::complete_state(n, bits));
            }

    std::string id = "toycpu-w" + std::to_string(w);
    for (Opcode op : ops) id += (op == ops.front() ? "-" : "+") + opcode_name(op);
    return build_task(space, goals, {index_range(0, 2 + 2 * w)}, std::move(id));
}

Task gen_from_reward(int n, const std::function<double(const PartialState&)>& score,
                     double threshold, std::vector<std::vector<int>> frames) {
    VariableSpace space(n);
    std::vector<PartialState> goals;
    for (auto& z : completions(PartialState(n)))
        if (score(z) >= threshold) goals.push_back(z);
    if (goals.empty()) fail(ErrorKind::EmptyGoalSet, "no complete state reaches the threshold");
    return build_task(space, goals, std::move(frames), "reward-n" + std::to_string(n));
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

} // namespace

Task read_task(const std::string& text, std::string id) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    bool saw_header = false;
    int n = -1;
    std::vector<std::string> names;
    std::vector<std::vector<int>> frames;
    std::vector<PartialState> goal_patterns;

    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto tokens = tokenize(raw);
        if (tokens.empty()) continue;
        const std::string& kind = tokens[0];

        if (!saw_header) {
            if (kind != "task" || tokens.size() != 2 || tokens[1] != "v1")
                fail(ErrorKind::ParseError, "expected 'task v1' header", lineno);
            saw_header = true;
            continue;
        }
        if (kind == "vars") {
            if (n >= 0) fail(ErrorKind::ParseError, "duplicate vars line", lineno);
            if (tokens.size() != 2) fail(ErrorKind::ParseError, "vars takes one count", lineno);
            try {
                n = std::stoi(tokens[1]);
            } catch (...) {
                fail(ErrorKind::ParseError, "bad variable count '" + tokens[1] + "'", lineno);
            }
            if (n < 1 || n > kMaxVariables)
                fail(ErrorKind::ParseError, "variable count out of range", lineno);
            continue;
        }
        if (n < 0) fail(ErrorKind::ParseError, "vars line must come before '" + kind + "'", lineno);

        if (kind == "names") {
            if (!names.empty()) fail(ErrorKind::ParseError, "duplicate names line", lineno);
            names.assign(tokens.begin() + 1, tokens.end());
            if (static_cast<int>(names.size()) != n)
                fail(ErrorKind::ParseError, "expected " + std::to_string(n) + " names", lineno);
        } else if (kind == "frame") {
            std::vector<int> frame;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                int index;
                try {
                    index = std::stoi(tokens[i]);
                } catch (...) {
                    index = -1;
                }
                if (index < 0 || index >= n)
                    fail(ErrorKind::ParseError, "bad frame index '" + tokens[i] + "'", lineno);
                frame.push_back(index);
            }
            frames.push_back(std::move(frame));
        } else if (kind == "goal") {
            if (tokens.size() != 2) fail(ErrorKind::ParseError, "goal takes one pattern", lineno);
            try {
                goal_patterns.push_back(PartialState::parse(n, tokens[1]));
            } catch (const Error& e) {
                fail(ErrorKind::ParseError, e.what(), lineno);
            }
        } else {
            fail(ErrorKind::ParseError, "unknown directive '" + kind + "'", lineno);
        }
    }

    if (!saw_header) fail(ErrorKind::ParseError, "missing 'task v1' header", lineno);
    if (n < 0) fail(ErrorKind::ParseError, "missing vars line", lineno);
    if (frames.empty()) fail(ErrorKind::ParseError, "at least one frame line required", lineno);
    if (goal_patterns.empty()) fail(ErrorKind::ParseError, "at least one goal line required", lineno);

    VariableSpace space = names.empty() ? VariableSpace(n) : VariableSpace(n, std::move(names));
    return build_task(space, goal_patterns, std::move(frames), std::move(id));
}

std::string write_task(const Task& task) {
    std::ostringstream out;
    out << "task v1\n";
    out << "vars " << task.space.size() << "\n";
    if (task.space.has_names()) {
        out << "names";
        for (const auto& name : task.space.names()) out << ' ' << name;
        out << "\n";
    }
    for (const auto& frame : task.frames) {
        out << "frame";
        for (int index : frame) out << ' ' << index;
        out << "\n";
    }
    for (const auto& g : task.goals) out << "goal " << g.pattern() << "\n";
    return out.str();
}

} // namespace intension
