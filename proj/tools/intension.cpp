// Command-line front end: task generation, single fits, decision evaluation,
// sample-efficiency curves, and a quick self-test.
//
// Exit codes: 0 ok, 1 usage, 2 data/parse error, 3 exactness infeasible,
// 4 dominance verdict FAIL.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "intension/decision.hpp"
#include "intension/harness.hpp"
#include "intension/learner.hpp"
#include "intension/tasks.hpp"

namespace {

using namespace intension;

std::map<std::string, std::string> parse_params(const std::string& params) {
    std::map<std::string, std::string> out;
    std::istringstream in(params);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::BadSpec, "expected key=value in --params, got '" + item + "'");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

int param_int(const std::map<std::string, std::string>& params, const std::string& key,
              std::optional<int> fallback = std::nullopt) {
    auto it = params.find(key);
    if (it == params.end()) {
        if (fallback) return *fallback;
        fail(ErrorKind::BadSpec, "missing generator parameter '" + key + "'");
    }
    try {
        return std::stoi(it->second);
    } catch (...) {
        fail(ErrorKind::BadSpec, "bad integer for parameter '" + key + "'");
    }
}

Task task_from_generator(const std::string& name, const std::string& params) {
    auto p = parse_params(params);
    if (name == "addition") return gen_binary_addition(param_int(p, "w"));
    if (name == "prediction") return gen_string_prediction(param_int(p, "L"), param_int(p, "p"));
    if (name == "parity") return gen_parity(param_int(p, "n"));
    if (name == "toycpu") {
        ToyCpuSpec spec;
        spec.width = param_int(p, "w");
        std::string ops = p.count("ops") ? p.at("ops") : "ADD+AND+XOR+MOV";
        std::istringstream in(ops);
        std::string op;
        while (std::getline(in, op, '+')) {
            if (op == "ADD") spec.opcodes.push_back(Opcode::Add);
            else if (op == "AND") spec.opcodes.push_back(Opcode::And);
            else if (op == "XOR") spec.opcodes.push_back(Opcode::Xor);
            else if (op == "MOV") spec.opcodes.push_back(Opcode::Mov);
            else fail(ErrorKind::BadSpec, "unknown opcode '" + op + "'");
        }
        return gen_toycpu(spec);
    }
    if (name == "reward") {
        int n = param_int(p, "n");
        int theta = param_int(p, "theta");
        int frame_size = param_int(p, "frame", std::max(1, n / 2));
        if (frame_size < 0 || frame_size > n) fail(ErrorKind::BadSpec, "bad frame size");
        std::vector<int> frame;
        for (int i = 0; i < frame_size; ++i) frame.push_back(i);
        auto popcount_score = [](const PartialState& z) {
            return static_cast<double>(__builtin_popcount(z.value_bits()));
        };
        return gen_from_reward(n, popcount_score, theta, {frame});
    }
    if (name == "random8") return degeneracy_task(param_int(p, "seed", 1001));
    fail(ErrorKind::BadSpec, "unknown generator '" + name + "'");
}

std::string file_stem(const std::string& path) {
    auto slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

Task load_task(const std::string& task_path, const std::string& generator,
               const std::string& params) {
    if (!task_path.empty()) {
        std::ifstream in(task_path);
        if (!in) fail(ErrorKind::ParseError, "cannot open task file '" + task_path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return read_task(buffer.str(), file_stem(task_path));
    }
    if (!generator.empty()) return task_from_generator(generator, params);
    fail(ErrorKind::BadSpec, "either --task or --generator is required");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (...) {
            fail(ErrorKind::BadSpec, "bad integer '" + item + "' in list");
        }
    }
    return out;
}

PolicyKind parse_policy(const std::string& name) {
    if (name == "lex") return PolicyKind::LexFirst;
    if (name == "uniform") return PolicyKind::Uniform;
    if (name == "extfirst") return PolicyKind::ExtensionalFirst;
    fail(ErrorKind::BadSpec, "unknown policy '" + name + "' (lex, uniform, extfirst)");
}

std::uint64_t master_seed(const CLI::Option* seed_opt, std::uint64_t seed_flag) {
    if (seed_opt->count() > 0) return seed_flag;
    if (const char* env = std::getenv("INTENSION_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            fail(ErrorKind::BadSpec, "bad INTENSION_SEED value");
        }
    }
    return seed_flag;
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(ErrorKind::BadSpec, "cannot write '" + out_path + "'");
    out << content;
}

void print_solution(const Solution& sol) {
    std::cout << "learner=" << sol.provenance.learner << " width=" << sol.provenance.width_bound
              << " weakness=" << sol.weakness
              << " violations=" << sol.provenance.necessity_violations
              << " fit_ms=" << static_cast<long long>(sol.provenance.fit_ms) << "\n";
    std::cout << sol.text() << "\n";
}

Solution fit_by_name(const std::string& learner, const OstensiveDefinition& o,
                     const LearnerConfig& cfg) {
    if (learner == "intensional") return fit_intensional(o, cfg);
    if (learner == "strongest") return fit_strongest(o, cfg);
    if (learner == "extensional") return fit_extensional(o);
    fail(ErrorKind::BadSpec, "unknown learner '" + learner + "'");
}

int run_selftest();

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weakest-constraint task learning over partial binary states"};
    app.require_subcommand(1);

    std::string task_path, generator, params, learner_flag, samples_flag, policy_flag = "lex";
    std::string eval_mode_flag = "heldout", out_path;
    std::uint64_t seed_flag = 1;
    int trials = 30, width = 0;
    double epsilon = 0.02;
    bool abort_on_error = false;

    auto add_task_flags = [&](CLI::App* cmd) {
        cmd->add_option("--task", task_path, "task file path");
        cmd->add_option("--generator", generator, "task generator name");
        cmd->add_option("--params", params, "generator parameters, key=value comma list");
    };

    auto* gen = app.add_subcommand("gen", "emit a task file from a generator");
    gen->add_option("--generator", generator, "task generator name")->required();
    gen->add_option("--params", params, "generator parameters");
    gen->add_option("--out", out_path, "output path (default stdout)");

    auto* fit = app.add_subcommand("fit", "fit one learner on an ostensive sample");
    add_task_flags(fit);
    fit->add_option("--learner", learner_flag, "intensional|strongest|extensional")->required();
    fit->add_option("--samples", samples_flag, "sample size m")->required();
    auto* fit_seed = fit->add_option("--seed", seed_flag, "master seed");
    fit->add_option("--width", width, "clause width bound (default: variable count)");

    auto* eval = app.add_subcommand("eval", "decision trials for a fitted solution");
    add_task_flags(eval);
    eval->add_option("--learner", learner_flag, "intensional|strongest|extensional")->required();
    eval->add_option("--samples", samples_flag, "sample size m")->required();
    auto* eval_seed = eval->add_option("--seed", seed_flag, "master seed");
    eval->add_option("--width", width, "clause width bound");
    eval->add_option("--policy", policy_flag, "lex|uniform|extfirst");
    eval->add_option("--eval-mode", eval_mode_flag, "full|heldout");

    auto* curve = app.add_subcommand("curve", "sample-efficiency sweep, CSV output");
    add_task_flags(curve);
    curve->add_option("--learner", learner_flag, "comma list (default: all three)");
    curve->add_option("--samples", samples_flag, "comma list of sample sizes")->required();
    curve->add_option("--trials", trials, "trials per sample size");
    auto* curve_seed = curve->add_option("--seed", seed_flag, "master seed");
    curve->add_option("--width", width, "clause width bound");
    curve->add_option("--policy", policy_flag, "lex|uniform|extfirst");
    curve->add_option("--eval-mode", eval_mode_flag, "full|heldout");
    curve->add_option("--epsilon", epsilon, "dominance tolerance");
    curve->add_option("--out", out_path, "CSV path (default stdout)");
    curve->add_flag("--abort-on-error", abort_on_error, "abort the sweep on fit errors");

    app.add_subcommand("selftest", "run the invariant suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            Task task = task_from_generator(generator, params);
            write_output(out_path, write_task(task));
            return 0;
        }
        if (fit->parsed()) {
            Task task = load_task(task_path, generator, params);
            auto sizes = parse_int_list(samples_flag);
            if (sizes.size() != 1) fail(ErrorKind::BadSpec, "fit takes a single sample size");
            RngStream rng(master_seed(fit_seed, seed_flag));
            OstensiveDefinition o = sample_ostensive(task, sizes[0], rng);
            LearnerConfig cfg{width > 0 ? width : task.space.size(), 18,
                              InfeasibilityMode::Error};
            Solution sol = fit_by_name(learner_flag, o, cfg);
            print_solution(sol);
            if (sol.is_sentence())
                std::cout << "exact=" << (is_exact(sol.sentence, o) ? 1 : 0) << "\n";
            return 0;
        }
        if (eval->parsed()) {
            Task task = load_task(task_path, generator, params);
            auto sizes = parse_int_list(samples_flag);
            if (sizes.size() != 1) fail(ErrorKind::BadSpec, "eval takes a single sample size");
            std::uint64_t seed = master_seed(eval_seed, seed_flag);
            RngStream rng(seed);
            OstensiveDefinition o = sample_ostensive(task, sizes[0], rng);
            LearnerConfig cfg{width > 0 ? width : task.space.size(), 18,
                              InfeasibilityMode::Error};
            Solution sol = fit_by_name(learner_flag, o, cfg);
            AbductionPolicy policy{parse_policy(policy_flag), std::nullopt};
            if (policy.kind == PolicyKind::ExtensionalFirst) policy.lookup = fit_extensional(o);
            std::vector<PartialState> eval_set;
            if (eval_mode_flag == "full") {
                eval_set = task.initials;
            } else if (eval_mode_flag == "heldout") {
                std::set_difference(task.initials.begin(), task.initials.end(),
                                    o.initials.begin(), o.initials.end(),
                                    std::back_inserter(eval_set));
            } else {
                fail(ErrorKind::BadSpec, "unknown eval mode '" + eval_mode_flag + "'");
            }
            RngStream eval_rng(mix_seed(seed, fnv1a64(learner_flag), 0, 0));
            int successes = 0;
            for (const auto& s : eval_set) {
                Outcome outcome = decision_trial(task, sol, s, policy, &eval_rng);
                std::cout << s.pattern() << " -> ";
                if (outcome.decision)
                    std::cout << outcome.decision->pattern()
                              << (outcome.success ? " success" : " failure");
                else
                    std::cout << "no_completion";
                std::cout << "\n";
                if (outcome.success) ++successes;
            }
            double rate = eval_set.empty()
                              ? 0.0
                              : static_cast<double>(successes) / eval_set.size();
            std::ostringstream rate_text;
            rate_text << std::fixed << std::setprecision(6) << rate;
            std::cout << "rate=" << rate_text.str() << " evaluated=" << eval_set.size() << "\n";
            return 0;
        }
        if (curve->parsed()) {
            ExperimentConfig cfg;
            cfg.task = load_task(task_path, generator, params);
            if (!learner_flag.empty()) {
                cfg.learners.clear();
                std::istringstream in(learner_flag);
                std::string item;
                while (std::getline(in, item, ',')) cfg.learners.push_back(item);
            }
            cfg.sample_sizes = parse_int_list(samples_flag);
            cfg.trials = trials;
            cfg.master_seed = master_seed(curve_seed, seed_flag);
            cfg.width_bound = width;
            cfg.policy = parse_policy(policy_flag);
            if (eval_mode_flag == "full")
                cfg.eval_mode = EvalMode::FullS;
            else if (eval_mode_flag == "heldout")
                cfg.eval_mode = EvalMode::Heldout;
            else
                fail(ErrorKind::BadSpec, "unknown eval mode '" + eval_mode_flag + "'");
            cfg.epsilon = epsilon;
            cfg.abort_on_error = abort_on_error;

            auto points = run_curve(cfg);
            write_output(out_path, to_csv(points));
            std::ostream& report_out = out_path.empty() ? std::cerr : std::cout;
            if (cfg.learners.size() >= 2 &&
                std::find(cfg.learners.begin(), cfg.learners.end(), "intensional") !=
                    cfg.learners.end()) {
                DominanceReport report = dominance_report(points, cfg.epsilon);
                report_out << report.text();
                if (!report.pass) return 4;
            }
            return 0;
        }
        return run_selftest();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::ExactnessInfeasible ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

namespace {

int run_selftest() {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    // Subsequence is a partial order; exhaustive over all pairs at n=3.
    {
        std::vector<PartialState> all;
        int n = 3;
        for (int code = 0; code < 27; ++code) {
            PartialState s(n);
            int c = code;
            for (int i = 0; i < n; ++i, c /= 3)
                if (c % 3) s = s.with(i, c % 3 == 2);
            all.push_back(s);
        }
        bool ok = true;
        for (const auto& a : all) {
            if (!is_subsequence(a, a)) ok = false;
            for (const auto& b : all) {
                if (is_subsequence(a, b) && is_subsequence(b, a) && !(a == b)) ok = false;
                for (const auto& c : all)
                    if (is_subsequence(a, b) && is_subsequence(b, c) && !is_subsequence(a, c))
                        ok = false;
            }
        }
        check("subsequence partial order (n=3, exhaustive)", ok);
    }

    // Clause universe matches the closed-form count.
    {
        bool ok = true;
        for (int n = 1; n <= 5; ++n) {
            VariableSpace space(n);
            for (int k = 1; k <= n; ++k) {
                std::uint64_t expect = 0, binom = 1;
                for (int w = 1; w <= k; ++w) {
                    binom = binom * (n - w + 1) / w;
                    expect += binom << w;
                }
                if (clause_universe(space, k).size() != expect) ok = false;
            }
        }
        check("clause universe count formula (n<=5)", ok);
    }

    // Model counting agrees with naive Kleene evaluation.
    {
        VariableSpace space(8);
        RngStream rng(7);
        bool ok = true;
        for (int round = 0; round < 25 && ok; ++round) {
            std::vector<Clause> clauses;
            int count = 1 + static_cast<int>(rng.below(5));
            for (int i = 0; i < count; ++i) {
                std::vector<Literal> lits;
                std::uint32_t used = 0;
                int width = 1 + static_cast<int>(rng.below(3));
                while (static_cast<int>(lits.size()) < width) {
                    int index = static_cast<int>(rng.below(8));
                    if (used & (1u << index)) continue;
                    used |= 1u << index;
                    lits.push_back({index, rng.below(2) == 1});
                }
                clauses.push_back(Clause::of(std::move(lits)));
            }
            Sentence h = Sentence::of(std::move(clauses));
            std::uint64_t naive = 0;
            for (auto& z : completions(PartialState(8)))
                if (eval_sentence(h, z) == Truth3::True) ++naive;
            if (count_models(h, space) != naive) ok = false;
        }
        check("count_models vs naive enumeration (25 random sentences)", ok);
    }

    // Persistence under refinement: true stays true, false stays false.
    {
        RngStream rng(11);
        int n = 6;
        bool ok = true;
        for (int round = 0; round < 2000 && ok; ++round) {
            std::vector<Literal> lits;
            std::uint32_t used = 0;
            int width = 1 + static_cast<int>(rng.below(3));
            while (static_cast<int>(lits.size()) < width) {
                int index = static_cast<int>(rng.below(n));
                if (used & (1u << index)) continue;
                used |= 1u << index;
                lits.push_back({index, rng.below(2) == 1});
            }
            Sentence h = Sentence::of({Clause::of(std::move(lits))});
            PartialState s(n);
            for (int i = 0; i < n; ++i)
                if (rng.below(2)) s = s.with(i, rng.below(2) == 1);
            PartialState refined = s;
            for (int i = 0; i < n; ++i)
                if (!refined.is_defined(i) && rng.below(2)) refined = refined.with(i, rng.below(2) == 1);
            Truth3 before = eval_sentence(h, s);
            Truth3 after = eval_sentence(h, refined);
            if (before == Truth3::True && after != Truth3::True) ok = false;
            if (before == Truth3::False && after != Truth3::False) ok = false;
        }
        check("Kleene persistence under refinement (2000 random cases)", ok);
    }

    // Learner round trip on a small addition task.
    {
        Task task = gen_binary_addition(1);
        RngStream rng(42);
        OstensiveDefinition o = sample_ostensive(task, 2, rng);
        LearnerConfig cfg{4, 18, InfeasibilityMode::Error};
        Solution a = fit_intensional(o, cfg);
        Solution b = fit_intensional(o, cfg);
        bool ok = a.sentence == b.sentence && a.weakness == b.weakness &&
                  is_exact(a.sentence, o) && fit_extensional(o).weakness == 2;
        check("intensional fit deterministic and exact (addition w=1)", ok);
    }

    // Generator round trips through the file format.
    {
        bool ok = true;
        for (const Task& task :
             {gen_binary_addition(1), gen_parity(3), gen_string_prediction(4, 2),
              gen_toycpu({1, {Opcode::Add, Opcode::Mov}})}) {
            Task back = read_task(write_task(task), task.id);
            if (!(back == task) || write_task(back) != write_task(task)) ok = false;
        }
        check("task file round trips", ok);
    }

    std::cout << (failures == 0 ? "selftest ok" : "selftest FAILED") << "\n";
    return failures == 0 ? 0 : 2;
}

} // namespace
