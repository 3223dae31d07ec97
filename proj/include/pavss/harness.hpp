#ifndef PAVSS_HARNESS_HPP
#define PAVSS_HARNESS_HPP

#include "pavss/baselines.hpp"
#include "pavss/channel.hpp"
#include "pavss/trellis.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pavss {

enum class Solver { vss, brute_force, pgga, best_singleton };

/// Short label used in file names and CSV rows: vss, brute, pgga, singleton.
std::string_view solver_label(Solver s);
/// Accepts the short labels plus "brute_force" and "best_singleton".
Solver parse_solver(std::string_view name);

struct SolverOutcome {
    Solver solver = Solver::vss;
    double metric = 0.0;
    double min_rate = 0.0;
    std::size_t active_count = 0;
    std::uint64_t evaluations = 0;
    std::string activation;

    // Trellis diagnostics; zero / empty for the other solvers.
    std::size_t termination_stage = 0;
    std::size_t best_stage = 0;
    std::vector<double> running_best_rate;
    std::vector<std::size_t> survivors_per_stage;
};

struct TrialRecord {
    std::size_t trial_index = 0;
    std::size_t n_antennas = 0;
    std::uint64_t seed = 0;
    std::vector<SolverOutcome> outcomes;

    /// nullptr when the solver was not run.
    const SolverOutcome* find(Solver s) const;
};

struct TrialOptions {
    std::size_t brute_force_cap = kDefaultBruteForceCap;
    VssOptions vss;
};

/// Placement seed for one (master seed, N, trial) triple. SplitMix64 mixing of
/// the three inputs, so adding solvers or reordering N never moves a trial.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n_antennas, std::size_t trial_index);

/// Samples one placement from `seed`, builds B once and runs every solver on it.
TrialRecord run_trial(const SystemConfig& config, std::uint64_t seed, const std::vector<Solver>& solvers,
                      const TrialOptions& options = {});

struct ExperimentSpec {
    SystemConfig base_config;
    std::vector<std::size_t> n_values;
    std::vector<Solver> solvers;
    std::size_t n_trials = 200;
    std::uint64_t seed = 0;
    TrialOptions options;

    void validate() const;
};

struct AggregateRow {
    std::size_t n_antennas = 0;
    Solver solver = Solver::vss;
    std::size_t n_trials = 0;
    double mean_rate = 0.0;
    double mean_metric = 0.0;
    double mean_evaluations = 0.0;
    double mean_active_count = 0.0;
    double mean_termination_stage = 0.0;
    double mean_best_stage = 0.0;
    /// Stage-aligned mean running-best rate (trellis only).
    std::vector<double> mean_stage_curve;
};

struct AggregateResult {
    std::vector<AggregateRow> rows;

    const AggregateRow* find(std::size_t n_antennas, Solver s) const;
};

/// Runs every (N, trial) pair of the spec, N-major, trials in index order.
std::vector<TrialRecord> collect_trials(const ExperimentSpec& spec);

/// Means per (N, solver), rows ordered by first appearance in `records`.
AggregateResult aggregate(const std::vector<TrialRecord>& records);

AggregateResult run_sweep(const ExperimentSpec& spec);

/// Mean of non-decreasing curves of unequal length; shorter ones are padded
/// with their last value.
std::vector<double> carry_forward_mean(const std::vector<std::vector<double>>& curves);

struct ConvergenceCurve {
    std::size_t n_antennas = 0;
    std::size_t n_users = 0;
    std::size_t n_trials = 0;
    std::vector<double> mean_rate;
    double mean_termination_stage = 0.0;
    double mean_best_stage = 0.0;
    std::size_t max_termination_stage = 0;
};

ConvergenceCurve run_convergence(const SystemConfig& config, std::size_t n_trials, std::uint64_t seed,
                                 const VssOptions& options = {});

} // namespace pavss

#endif // PAVSS_HARNESS_HPP
