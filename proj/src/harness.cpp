#include "intension/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace intension {

namespace {

const std::vector<std::string> kLearnerOrder = {"intensional", "strongest", "extensional"};

std::vector<std::string> canonical_learners(const std::vector<std::string>& requested) {
    std::vector<std::string> out;
    for (const auto& name : kLearnerOrder)
        if (std::find(requested.begin(), requested.end(), name) != requested.end())
            out.push_back(name);
    if (out.size() != requested.size())
        fail(ErrorKind::BadSpec, "learners must be among intensional, strongest, extensional");
    return out;
}

std::vector<PartialState> heldout_initials(const Task& task, const OstensiveDefinition& o) {
    std::vector<PartialState> out;
    std::set_difference(task.initials.begin(), task.initials.end(), o.initials.begin(),
                        o.initials.end(), std::back_inserter(out));
    return out;
}

Solution fit_learner(const std::string& name, const OstensiveDefinition& o,
                     const LearnerConfig& cfg) {
    if (name == "intensional") return fit_intensional(o, cfg);
    if (name == "strongest") return fit_strongest(o, cfg);
    return fit_extensional(o);
}

std::string format_rate(double rate) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(6) << rate;
    return out.str();
}

} // namespace

std::vector<CurvePoint> run_curve(const ExperimentConfig& cfg) {
    const Task& task = cfg.task;
    int total_goals = static_cast<int>(task.goals.size());
    if (cfg.trials < 1) fail(ErrorKind::BadSpec, "trials must be at least 1");
    if (cfg.sample_sizes.empty()) fail(ErrorKind::BadSpec, "no sample sizes given");
    for (int m : cfg.sample_sizes)
        if (m < 1 || m >= total_goals)
            fail(ErrorKind::SampleTooLarge,
                 "sample size " + std::to_string(m) + " outside [1, " +
                     std::to_string(total_goals - 1) + "]");

    std::vector<std::string> learners = canonical_learners(cfg.learners);
    LearnerConfig lcfg{cfg.width_bound > 0 ? cfg.width_bound : task.space.size(),
                       cfg.exhaustive_threshold, cfg.infeasibility};
    std::uint64_t task_hash = fnv1a64(task.id);

    std::vector<CurvePoint> points;
    for (int m : cfg.sample_sizes) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            std::uint64_t trial_seed =
                mix_seed(cfg.master_seed, task_hash, static_cast<std::uint64_t>(m),
                         static_cast<std::uint64_t>(trial));
            RngStream sample_rng(trial_seed);
            OstensiveDefinition o = sample_ostensive(task, m, sample_rng);
            std::vector<PartialState> eval_set =
                cfg.eval_mode == EvalMode::FullS ? task.initials : heldout_initials(task, o);

            AbductionPolicy policy{cfg.policy, std::nullopt};
            if (cfg.policy == PolicyKind::ExtensionalFirst) policy.lookup = fit_extensional(o);

            for (const auto& learner : learners) {
                CurvePoint point;
                point.task_id = task.id;
                point.learner = learner;
                point.m = m;
                point.trial = trial;
                point.seed = trial_seed;
                try {
                    Solution sol = fit_learner(learner, o, lcfg);
                    point.weakness = sol.weakness;
                    point.fit_ms = sol.provenance.fit_ms;
                    point.exact = sol.is_sentence() ? is_exact(sol.sentence, o) : true;
                    if (eval_set.empty()) {
                        point.rate = 0.0;
                    } else {
                        RngStream eval_rng(mix_seed(trial_seed, fnv1a64(learner), 0, 0));
                        point.rate =
                            generalization_rate(task, sol, eval_set, policy, &eval_rng);
                    }
                } catch (const Error&) {
                    if (cfg.abort_on_error) throw;
                    point.exact = false;
                }
                points.push_back(std::move(point));
            }
        }
    }
    return points;
}

std::string to_csv(const std::vector<CurvePoint>& points) {
    std::ostringstream out;
    out << "task,learner,m,trial,seed,rate,weakness,exact,fit_ms\n";
    for (const auto& p : points) {
        out << p.task_id << ',' << p.learner << ',' << p.m << ',' << p.trial << ',' << p.seed
            << ',';
        if (p.rate) out << format_rate(*p.rate);
        out << ',';
        if (p.weakness) out << *p.weakness;
        out << ',' << (p.exact ? '1' : '0') << ','
            << static_cast<long long>(p.fit_ms) << "\n";
    }
    return out.str();
}

std::vector<CurvePoint> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<CurvePoint> points;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 || line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        while (fields.size() < 9) fields.emplace_back();
        CurvePoint p;
        p.task_id = fields[0];
        p.learner = fields[1];
        try {
            p.m = std::stoi(fields[2]);
            p.trial = std::stoi(fields[3]);
            p.seed = std::stoull(fields[4]);
            if (!fields[5].empty()) p.rate = std::stod(fields[5]);
            if (!fields[6].empty()) p.weakness = std::stoull(fields[6]);
            p.exact = fields[7] == "1";
            p.fit_ms = fields[8].empty() ? 0.0 : std::stod(fields[8]);
        } catch (...) {
            fail(ErrorKind::ParseError, "bad CSV row", lineno);
        }
        points.push_back(std::move(p));
    }
    return points;
}

std::string DominanceReport::text() const {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    for (const auto& row : rows) {
        out << "m=" << row.m;
        auto cell = [&](const char* name, const std::optional<double>& v) {
            out << ' ' << name << '=';
            if (v)
                out << *v;
            else
                out << '-';
        };
        cell("intensional", row.intensional);
        cell("strongest", row.strongest);
        cell("extensional", row.extensional);
        if (row.intensional) {
            if (row.strongest) out << " d_strongest=" << (*row.intensional - *row.strongest);
            if (row.extensional) out << " d_extensional=" << (*row.intensional - *row.extensional);
        }
        out << "\n";
    }
    out << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

DominanceReport dominance_report(const std::vector<CurvePoint>& points, double epsilon) {
    std::set<std::string> tasks;
    std::set<std::string> learners;
    // learner -> m -> (sum, count) over rows with a rate; plus the trial grid.
    std::map<std::string, std::map<int, std::pair<double, int>>> sums;
    std::map<std::string, std::set<std::pair<int, int>>> grids;
    for (const auto& p : points) {
        tasks.insert(p.task_id);
        learners.insert(p.learner);
        grids[p.learner].insert({p.m, p.trial});
        if (p.rate) {
            auto& cell = sums[p.learner][p.m];
            cell.first += *p.rate;
            cell.second += 1;
        }
    }
    if (tasks.size() != 1) fail(ErrorKind::MismatchedRuns, "points span multiple tasks");
    if (learners.size() < 2 || !learners.count("intensional"))
        fail(ErrorKind::MismatchedRuns, "need the intensional learner plus a comparator");
    const auto& reference = grids.begin()->second;
    for (const auto& [name, grid] : grids)
        if (grid != reference)
            fail(ErrorKind::MismatchedRuns, "learner " + name + " covers a different trial grid");

    std::set<int> sizes;
    for (const auto& [m, t] : reference) sizes.insert(m);

    auto mean_of = [&](const std::string& learner, int m) -> std::optional<double> {
        auto it = sums.find(learner);
        if (it == sums.end()) return std::nullopt;
        auto jt = it->second.find(m);
        if (jt == it->second.end() || jt->second.second == 0) return std::nullopt;
        return jt->second.first / jt->second.second;
    };

    DominanceReport report;
    report.pass = true;
    for (int m : sizes) {
        DominanceRow row;
        row.m = m;
        row.intensional = mean_of("intensional", m);
        row.strongest = mean_of("strongest", m);
        row.extensional = mean_of("extensional", m);
        double mine = row.intensional.value_or(0.0);
        for (const auto& comparator : {row.strongest, row.extensional})
            if (comparator && mine < *comparator - epsilon) report.pass = false;
        report.rows.push_back(row);
    }
    return report;
}

Task random_goal_task(int n, int goal_count, std::vector<int> frame, std::uint64_t seed) {
    if (goal_count < 1 || static_cast<std::uint64_t>(goal_count) > (1ull << n))
        fail(ErrorKind::BadSpec, "goal count out of range");
    VariableSpace space(n);
    RngStream rng(seed);
    std::set<std::uint32_t> picked;
    while (static_cast<int>(picked.size()) < goal_count)
        picked.insert(static_cast<std::uint32_t>(rng.below(1ull << n)));
    std::vector<PartialState> goals;
    for (std::uint32_t bits : picked) goals.push_back(PartialState::complete_state(n, bits));
    return build_task(space, goals, {std::move(frame)}, "random8-s" + std::to_string(seed));
}

OstensiveDefinition sample_ostensive_covering(const Task& task, int m, RngStream& rng,
                                              int max_attempts) {
    OstensiveDefinition o;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        o = sample_ostensive(task, m, rng);
        if (o.covers_all) return o;
    }
    return o;
}

DegeneracyPreset degeneracy_preset() {
    DegeneracyPreset preset;
    // Catalog seeds are pinned to draws where every input-frame pattern
    // occurs among the goals, so a covering sample observes the whole cube.
    preset.task_seeds = {1005, 1006, 1011, 1035, 1039};
    preset.sample_sizes = {28, 30, 31};
    preset.trials_per_size = 3;
    preset.width_bound = 8;
    return preset;
}

Task degeneracy_task(std::uint64_t seed) {
    return random_goal_task(8, 32, {0, 1, 2, 3}, seed);
}

} // namespace intension
