#include "pavss/harness.hpp"

#include "pavss/metric.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace pavss {

namespace {

std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SolverOutcome outcome_from(Solver solver, const SystemConfig& config, const ChannelMatrix& B,
                           const ActivationVector& a, double metric, std::uint64_t evaluations)
{
    SolverOutcome o;
    o.solver = solver;
    o.metric = metric;
    o.min_rate = rate_report(config, B, a).min_rate;
    o.active_count = a.active_count();
    o.evaluations = evaluations;
    o.activation = a.to_string();
    return o;
}

} // namespace

std::string_view solver_label(Solver s)
{
    switch (s) {
    case Solver::vss:
        return "vss";
    case Solver::brute_force:
        return "brute";
    case Solver::pgga:
        return "pgga";
    case Solver::best_singleton:
        return "singleton";
    }
    return "unknown";
}

Solver parse_solver(std::string_view name)
{
    if (name == "vss")
        return Solver::vss;
    if (name == "brute" || name == "brute_force")
        return Solver::brute_force;
    if (name == "pgga")
        return Solver::pgga;
    if (name == "singleton" || name == "best_singleton")
        return Solver::best_singleton;
    throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

const SolverOutcome* TrialRecord::find(Solver s) const
{
    for (const auto& o : outcomes)
        if (o.solver == s)
            return &o;
    return nullptr;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n_antennas, std::size_t trial_index)
{
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(n_antennas));
    h = splitmix64(h ^ static_cast<std::uint64_t>(trial_index));
    return h;
}

TrialRecord run_trial(const SystemConfig& config, std::uint64_t seed, const std::vector<Solver>& solvers,
                      const TrialOptions& options)
{
    config.validate();
    const auto users = sample_users(seed, config);
    const auto B = build_channel_matrix(config, users);

    TrialRecord rec;
    rec.n_antennas = config.n_antennas;
    rec.seed = seed;

    for (Solver s : solvers) {
        switch (s) {
        case Solver::vss: {
            const auto r = vss_select(B, config.phase_bins, options.vss);
            auto o = outcome_from(s, config, B, r.best_activation, r.best_metric, r.trace.metric_evaluations);
            o.termination_stage = r.trace.termination_stage;
            o.best_stage = r.trace.best_stage;
            o.survivors_per_stage = r.trace.survivors_per_stage;
            o.running_best_rate.reserve(r.trace.running_best.size());
            for (double m : r.trace.running_best)
                o.running_best_rate.push_back(rate_from_metric(config, m));
            rec.outcomes.push_back(std::move(o));
            break;
        }
        case Solver::brute_force: {
            const auto r = brute_force_select(B, options.brute_force_cap);
            rec.outcomes.push_back(outcome_from(s, config, B, r.activation, r.metric, r.evaluations));
            break;
        }
        case Solver::pgga: {
            const auto r = greedy_pgga_select(B);
            rec.outcomes.push_back(outcome_from(s, config, B, r.activation, r.metric, r.evaluations));
            break;
        }
        case Solver::best_singleton: {
            const auto r = best_singleton(B);
            rec.outcomes.push_back(outcome_from(s, config, B, r.activation, r.metric, r.evaluations));
            break;
        }
        }
    }
    return rec;
}

void ExperimentSpec::validate() const
{
    base_config.validate();
    if (n_trials == 0)
        throw std::invalid_argument("ExperimentSpec: n_trials must be >= 1");
    if (n_values.empty())
        throw std::invalid_argument("ExperimentSpec: n_values is empty");
    if (solvers.empty())
        throw std::invalid_argument("ExperimentSpec: no solvers requested");
    for (auto n : n_values)
        if (n == 0)
            throw std::invalid_argument("ExperimentSpec: N must be >= 1");
    const bool brute = std::find(solvers.begin(), solvers.end(), Solver::brute_force) != solvers.end();
    if (brute) {
        for (auto n : n_values)
            if (n > options.brute_force_cap)
                throw std::invalid_argument("ExperimentSpec: brute force requested at N = " + std::to_string(n) +
                                            " above the cap of " + std::to_string(options.brute_force_cap));
    }
}

std::vector<TrialRecord> collect_trials(const ExperimentSpec& spec)
{
    spec.validate();
    std::vector<TrialRecord> records;
    records.reserve(spec.n_values.size() * spec.n_trials);
    for (auto n : spec.n_values) {
        SystemConfig config = spec.base_config;
        config.n_antennas = n;
        for (std::size_t t = 0; t < spec.n_trials; ++t) {
            auto rec = run_trial(config, trial_seed(spec.seed, n, t), spec.solvers, spec.options);
            rec.trial_index = t;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::vector<double> carry_forward_mean(const std::vector<std::vector<double>>& curves)
{
    std::size_t longest = 0;
    for (const auto& c : curves)
        longest = std::max(longest, c.size());
    std::vector<double> mean(longest, 0.0);
    std::size_t used = 0;
    for (const auto& c : curves) {
        if (c.empty())
            continue;
        ++used;
        for (std::size_t i = 0; i < longest; ++i)
            mean[i] += i < c.size() ? c[i] : c.back();
    }
    if (used > 0)
        for (auto& v : mean)
            v /= static_cast<double>(used);
    return mean;
}

const AggregateRow* AggregateResult::find(std::size_t n_antennas, Solver s) const
{
    for (const auto& r : rows)
        if (r.n_antennas == n_antennas && r.solver == s)
            return &r;
    return nullptr;
}

AggregateResult aggregate(const std::vector<TrialRecord>& records)
{
    using Key = std::pair<std::size_t, Solver>;
    std::vector<Key> order;
    std::map<Key, std::vector<const SolverOutcome*>> groups;
    for (const auto& rec : records) {
        for (const auto& o : rec.outcomes) {
            const Key key{rec.n_antennas, o.solver};
            auto [it, inserted] = groups.try_emplace(key);
            if (inserted)
                order.push_back(key);
            it->second.push_back(&o);
        }
    }

    AggregateResult out;
    for (const auto& key : order) {
        const auto& outcomes = groups.at(key);
        AggregateRow row;
        row.n_antennas = key.first;
        row.solver = key.second;
        row.n_trials = outcomes.size();
        std::vector<std::vector<double>> curves;
        for (const auto* o : outcomes) {
            row.mean_rate += o->min_rate;
            row.mean_metric += o->metric;
            row.mean_evaluations += static_cast<double>(o->evaluations);
            row.mean_active_count += static_cast<double>(o->active_count);
            row.mean_termination_stage += static_cast<double>(o->termination_stage);
            row.mean_best_stage += static_cast<double>(o->best_stage);
            if (!o->running_best_rate.empty())
                curves.push_back(o->running_best_rate);
        }
        const auto count = static_cast<double>(row.n_trials);
        row.mean_rate /= count;
        row.mean_metric /= count;
        row.mean_evaluations /= count;
        row.mean_active_count /= count;
        row.mean_termination_stage /= count;
        row.mean_best_stage /= count;
        row.mean_stage_curve = carry_forward_mean(curves);
        out.rows.push_back(std::move(row));
    }
    return out;
}

AggregateResult run_sweep(const ExperimentSpec& spec)
{
    return aggregate(collect_trials(spec));
}

ConvergenceCurve run_convergence(const SystemConfig& config, std::size_t n_trials, std::uint64_t seed,
                                 const VssOptions& options)
{
    config.validate();
    if (n_trials == 0)
        throw std::invalid_argument("run_convergence: n_trials must be >= 1");

    ConvergenceCurve out;
    out.n_antennas = config.n_antennas;
    out.n_users = config.n_users;
    out.n_trials = n_trials;

    TrialOptions trial_options;
    trial_options.vss = options;

    std::vector<std::vector<double>> curves;
    curves.reserve(n_trials);
    for (std::size_t t = 0; t < n_trials; ++t) {
        const auto rec = run_trial(config, trial_seed(seed, config.n_antennas, t), {Solver::vss}, trial_options);
        const auto& o = rec.outcomes.front();
        out.mean_termination_stage += static_cast<double>(o.termination_stage);
        out.mean_best_stage += static_cast<double>(o.best_stage);
        out.max_termination_stage = std::max(out.max_termination_stage, o.termination_stage);
        curves.push_back(o.running_best_rate);
    }
    out.mean_termination_stage /= static_cast<double>(n_trials);
    out.mean_best_stage /= static_cast<double>(n_trials);
    out.mean_rate = carry_forward_mean(curves);
    return out;
}

} // namespace pavss
