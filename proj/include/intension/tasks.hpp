#pragma once

#include <functional>
#include <string>
#include <vector>

#include "intension/state.hpp"

namespace intension {

// Binary addition with carry-out: a(w) + b(w) = s(w+1), all fields most
// significant bit first. Single frame over the input bits.
Task gen_binary_addition(int w);

// Periodic continuation: length-L strings with s[i] = s[i-p] for i >= p.
// Frame over the first p positions.
Task gen_string_prediction(int length, int period);

// y = XOR of x1..x(n-1); frame over the x's.
Task gen_parity(int n);

enum class Opcode { Add = 0, And = 1, Xor = 2, Mov = 3 };

std::string opcode_name(Opcode op);

// Single-instruction register machine: two opcode bits, then pre and post
// images of two w-bit registers. r0 is the destination, r1 is unchanged;
// ADD is modular. Opcode encoding: ADD=00, AND=01, XOR=10, MOV=11.
struct ToyCpuSpec {
    int width = 1;                 // register width, 1..3
    std::vector<Opcode> opcodes;   // nonempty subset, deduplicated
};

Task gen_toycpu(const ToyCpuSpec& spec);

// Goal set = complete states whose score reaches the threshold.
Task gen_from_reward(int n, const std::function<double(const PartialState&)>& score,
                     double threshold, std::vector<std::vector<int>> frames);

// Line-oriented task file format ('#' starts a comment):
//   task v1
//   vars <n>
//   names <id0> ... <id_{n-1}>     (optional)
//   frame <idx> <idx> ...          (one or more)
//   goal <pattern over 0/1/*>      (one or more)
// Canonical writing order: header, names, frames (each ascending, frames
// sorted), goals sorted.
Task read_task(const std::string& text, std::string id = "task");
std::string write_task(const Task& task);

} // namespace intension
