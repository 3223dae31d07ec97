#include "pavss/verify.hpp"

#include "pavss/baselines.hpp"
#include "pavss/harness.hpp"
#include "pavss/metric.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace pavss::verify {

namespace {

std::string printf_string(const char* format, auto... args)
{
    const int len = std::snprintf(nullptr, 0, format, args...);
    std::string s(static_cast<std::size_t>(len) + 1, '\0');
    std::snprintf(s.data(), s.size(), format, args...);
    s.pop_back();
    return s;
}

std::size_t scaled(std::size_t full, std::size_t quick, const Options& o)
{
    return o.quick ? quick : full;
}

TrialOptions trial_options(const Options& o)
{
    TrialOptions t;
    t.vss.quantizer = o.quantizer;
    return t;
}

bool relative_equal(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::uint64_t complexity_bound(std::size_t q_bins, std::size_t n_users, std::size_t n_antennas)
{
    return state_space_size(q_bins, n_users) * n_antennas * n_antennas;
}

struct OracleBatch {
    std::size_t trials = 0;
    std::size_t equal = 0;
    std::size_t vss_above_brute = 0;
    double mean_rate_gap = 0.0;
    double max_relative_gap = 0.0;
    std::size_t bound_violations = 0;
    std::uint64_t max_evaluations = 0;
};

OracleBatch oracle_batch(std::size_t n_antennas, std::size_t n_users, std::size_t trials, std::uint64_t seed,
                         const Options& o)
{
    const auto config = reference_config(n_antennas, n_users);
    const auto bound = complexity_bound(config.phase_bins, n_users, n_antennas);
    OracleBatch b;
    b.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto rec = run_trial(config, trial_seed(seed, n_antennas, t), {Solver::vss, Solver::brute_force},
                                   trial_options(o));
        const auto* v = rec.find(Solver::vss);
        const auto* bf = rec.find(Solver::brute_force);
        if (relative_equal(v->metric, bf->metric, 1e-9))
            ++b.equal;
        if (v->metric > bf->metric)
            ++b.vss_above_brute;
        b.mean_rate_gap += bf->min_rate - v->min_rate;
        b.max_relative_gap = std::max(b.max_relative_gap, (bf->metric - v->metric) / bf->metric);
        if (v->evaluations > bound)
            ++b.bound_violations;
        b.max_evaluations = std::max(b.max_evaluations, v->evaluations);
    }
    b.mean_rate_gap /= static_cast<double>(trials);
    return b;
}

// Seeds are offset per criterion so batches stay independent of each other.
std::uint64_t criterion_seed(const Options& o, Criterion c)
{
    return o.seed + 1000ULL * static_cast<std::uint64_t>(c);
}

CriterionResult oracle_single_user(const Options& o)
{
    const auto b = oracle_batch(12, 1, 200, criterion_seed(o, Criterion::oracle_single_user), o);
    const double fraction = static_cast<double>(b.equal) / static_cast<double>(b.trials);
    CriterionResult r{Criterion::oracle_single_user, "oracle equivalence, single user (N=12, M=1, Q=4)", false, {}, 0.0};
    r.passed = fraction >= 0.95 && b.mean_rate_gap <= 0.01 && b.vss_above_brute == 0;
    r.detail = printf_string("VSS = brute force in %zu/%zu trials (%.1f%%, need >= 95%%), mean rate gap %.5f "
                             "bps/Hz (<= 0.01), max relative metric gap %.3e",
                             b.equal, b.trials, 100.0 * fraction, b.mean_rate_gap, b.max_relative_gap);
    return r;
}

CriterionResult oracle_multi_user(const Options& o)
{
    const auto b = oracle_batch(10, 2, 100, criterion_seed(o, Criterion::oracle_multi_user), o);
    CriterionResult r{Criterion::oracle_multi_user, "oracle equivalence, multi-user (N=10, M=2, Q=4)", false, {}, 0.0};
    r.passed = b.mean_rate_gap <= 0.02 && b.vss_above_brute == 0;
    r.detail = printf_string("mean rate gap %.5f bps/Hz (<= 0.02), VSS above brute force in %zu/%zu trials "
                             "(must be 0), equal in %zu, max relative metric gap %.3e",
                             b.mean_rate_gap, b.vss_above_brute, b.trials, b.equal, b.max_relative_gap);
    return r;
}

CriterionResult complexity(const Options& o)
{
    CriterionResult r{Criterion::complexity_bound, "complexity bound Q^M N^2", false, {}, 0.0};
    const auto single = oracle_batch(12, 1, 200, criterion_seed(o, Criterion::oracle_single_user), o);
    const auto multi = oracle_batch(10, 2, 100, criterion_seed(o, Criterion::oracle_multi_user), o);

    std::size_t violations = single.bound_violations + multi.bound_violations;
    std::size_t stage_violations = 0;
    std::uint64_t max_eval_50 = 0;

    // Per-stage bounds need the full trace, so run the trellis directly.
    auto check_instances = [&](std::size_t n_antennas, std::size_t trials, std::uint64_t seed) {
        const auto config = reference_config(n_antennas, 1);
        const auto states = state_space_size(config.phase_bins, 1);
        std::uint64_t max_eval = 0;
        VssOptions vo;
        vo.quantizer = o.quantizer;
        for (std::size_t t = 0; t < trials; ++t) {
            const auto B = build_channel_matrix(config, sample_users(trial_seed(seed, n_antennas, t), config));
            const auto res = vss_select(B, config.phase_bins, vo);
            if (res.trace.metric_evaluations > complexity_bound(config.phase_bins, 1, n_antennas))
                ++violations;
            for (std::size_t i = 0; i < res.trace.evaluations_per_stage.size(); ++i) {
                const std::size_t stage = i + 1;
                const std::uint64_t allowed = stage == 1 ? n_antennas : states * (n_antennas - stage + 1);
                if (res.trace.evaluations_per_stage[i] > allowed || res.trace.survivors_per_stage[i] > states)
                    ++stage_violations;
            }
            max_eval = std::max(max_eval, res.trace.metric_evaluations);
        }
        return max_eval;
    };

    const auto seed = criterion_seed(o, Criterion::complexity_bound);
    max_eval_50 = check_instances(50, scaled(50, 10, o), seed);
    const auto max_eval_20 = check_instances(20, scaled(50, 10, o), seed);
    const double budget_20 = 0.01 * std::pow(2.0, 20);

    r.passed = violations == 0 && stage_violations == 0 && static_cast<double>(max_eval_20) < budget_20;
    r.detail = printf_string("bound violations %zu, per-stage violations %zu; max evaluations N=12: %llu (bound %llu), "
                             "N=10 M=2: %llu (bound %llu), N=50: %llu (bound %llu); N=20 max %llu < 1%% of 2^20 = %.0f",
                             violations, stage_violations, static_cast<unsigned long long>(single.max_evaluations),
                             static_cast<unsigned long long>(complexity_bound(4, 1, 12)),
                             static_cast<unsigned long long>(multi.max_evaluations),
                             static_cast<unsigned long long>(complexity_bound(4, 2, 10)),
                             static_cast<unsigned long long>(max_eval_50),
                             static_cast<unsigned long long>(complexity_bound(4, 1, 50)),
                             static_cast<unsigned long long>(max_eval_20), budget_20);
    return r;
}

CriterionResult baseline_dominance(const Options& o)
{
    CriterionResult r{Criterion::baseline_dominance, "VSS >= reconstructed PGGA (M=2, N=10,20,30)", false, {}, 0.0};
    ExperimentSpec spec;
    spec.base_config = reference_config(10, 2);
    spec.n_values = {10, 20, 30};
    spec.solvers = {Solver::vss, Solver::pgga};
    spec.n_trials = scaled(150, 40, o);
    spec.seed = criterion_seed(o, Criterion::baseline_dominance);
    spec.options = trial_options(o);
    const auto agg = run_sweep(spec);

    r.passed = true;
    for (auto n : spec.n_values) {
        const auto* v = agg.find(n, Solver::vss);
        const auto* p = agg.find(n, Solver::pgga);
        if (v->mean_rate < p->mean_rate)
            r.passed = false;
        r.detail += printf_string("%sN=%zu: VSS %.4f vs PGGA %.4f", r.detail.empty() ? "" : "; ", n, v->mean_rate,
                                  p->mean_rate);
    }
    return r;
}

CriterionResult convergence_shape(const Options& o)
{
    CriterionResult r{Criterion::convergence_shape, "convergence shape (N=100, M=1, Q=4)", false, {}, 0.0};
    VssOptions vo;
    vo.quantizer = o.quantizer;
    const auto curve = run_convergence(reference_config(100, 1), scaled(150, 40, o),
                                       criterion_seed(o, Criterion::convergence_shape), vo);
    const auto& c = curve.mean_rate;
    const bool monotone = std::is_sorted(c.begin(), c.end());
    const double final_value = c.back();
    const double at_25 = c[std::min<std::size_t>(24, c.size() - 1)];
    const double shortfall = (final_value - at_25) / final_value;
    const bool saturated = shortfall <= 0.01;
    const bool early = curve.mean_termination_stage < 100.0;

    r.passed = monotone && saturated && early;
    r.detail = printf_string("non-decreasing: %s; stage-25 value %.4f vs final %.4f (shortfall %.3f%%, need <= 1%%); "
                             "mean termination stage %.2f (< 100), mean best stage %.2f",
                             monotone ? "yes" : "no", at_25, final_value, 100.0 * shortfall,
                             curve.mean_termination_stage, curve.mean_best_stage);
    return r;
}

CriterionResult rate_vs_n(const Options& o)
{
    CriterionResult r{Criterion::rate_vs_n_trend, "rate-vs-N trend (M=1 rising; M=2 <= M=1)", false, {}, 0.0};
    const std::vector<std::size_t> n_values{5, 10, 20, 30, 40, 50};
    ExperimentSpec spec;
    spec.n_values = n_values;
    spec.solvers = {Solver::vss};
    spec.n_trials = scaled(200, 50, o);
    spec.seed = criterion_seed(o, Criterion::rate_vs_n_trend);
    spec.options = trial_options(o);

    spec.base_config = reference_config(5, 1);
    const auto single = run_sweep(spec);
    spec.base_config = reference_config(5, 2);
    const auto multi = run_sweep(spec);

    const double r5 = single.find(5, Solver::vss)->mean_rate;
    const double r50 = single.find(50, Solver::vss)->mean_rate;
    r.passed = r50 > r5;
    r.detail = printf_string("M=1: N=5 %.4f, N=50 %.4f", r5, r50);
    for (auto n : n_values) {
        const double one = single.find(n, Solver::vss)->mean_rate;
        const double two = multi.find(n, Solver::vss)->mean_rate;
        if (two > one)
            r.passed = false;
        r.detail += printf_string("; N=%zu M=2 %.4f <= M=1 %.4f", n, two, one);
    }
    return r;
}

ChannelMatrix random_instance(std::mt19937_64& rng, std::size_t index, std::size_t n_antennas, std::size_t n_users)
{
    if (index % 2 == 0) {
        const auto config = reference_config(n_antennas, n_users);
        return build_channel_matrix(config, sample_users(rng(), config));
    }
    std::normal_distribution<double> gauss;
    std::vector<cplx> gains(n_antennas * n_users);
    for (auto& g : gains)
        g = cplx{gauss(rng), gauss(rng)};
    return ChannelMatrix(n_users, n_antennas, std::move(gains));
}

bool same_result(const VssResult& a, const VssResult& b)
{
    return a.best_activation == b.best_activation && a.best_metric == b.best_metric &&
           a.trace.running_best == b.trace.running_best && a.trace.termination_stage == b.trace.termination_stage &&
           a.trace.best_stage == b.trace.best_stage && a.trace.metric_evaluations == b.trace.metric_evaluations &&
           a.trace.survivors_per_stage == b.trace.survivors_per_stage;
}

// Direct interval search over the bin edges.
std::size_t interval_oracle(double phi, std::size_t q_bins)
{
    const double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phi + std::numbers::pi, two_pi);
    if (w < 0.0)
        w += two_pi;
    w -= std::numbers::pi;
    for (std::size_t k = 0; k < q_bins; ++k) {
        const double lo = -std::numbers::pi + two_pi * static_cast<double>(k) / static_cast<double>(q_bins);
        const double hi = -std::numbers::pi + two_pi * static_cast<double>(k + 1) / static_cast<double>(q_bins);
        if (w >= lo && w < hi)
            return k;
    }
    return 0;
}

std::size_t quantizer_sweep_failures(const PhaseQuantizer& quantizer)
{
    const auto q = [&](double phi, std::size_t bins) { return quantizer ? quantizer(phi, bins) : quantize_phase(phi, bins); };
    std::size_t failures = 0;
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t bins = 1; bins <= 16; ++bins) {
        const double width = two_pi / static_cast<double>(bins);
        for (std::size_t k = 0; k < bins; ++k) {
            const double lo = -std::numbers::pi + width * static_cast<double>(k);
            for (double offset : {1e-9, 0.5 * width, width - 1e-9}) {
                for (double wrap : {0.0, two_pi, -two_pi}) {
                    const double phi = lo + offset + wrap;
                    if (q(phi, bins) != k || interval_oracle(phi, bins) != k)
                        ++failures;
                }
            }
        }
        if (q(std::numbers::pi, bins) != 0 || q(-std::numbers::pi, bins) != 0)
            ++failures;
    }
    return failures;
}

CriterionResult invariant_suite(const Options& o)
{
    CriterionResult r{Criterion::invariant_suite, "invariant suite (random N<=10, M<=2, Q in {1,2,4,8})", false, {}, 0.0};
    const std::size_t instances = scaled(500, 100, o);
    std::mt19937_64 rng(criterion_seed(o, Criterion::invariant_suite));
    std::uniform_int_distribution<std::size_t> pick_n(1, 10);
    std::uniform_int_distribution<std::size_t> pick_m(1, 2);
    const std::size_t q_choices[] = {1, 2, 4, 8};
    std::uniform_int_distribution<std::size_t> pick_q(0, 3);

    std::size_t ordering = 0, monotonic = 0, uniqueness = 0, determinism = 0, drift = 0, errors = 0;

    VssOptions vo;
    vo.quantizer = o.quantizer;

    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t n = pick_n(rng);
        const std::size_t m = pick_m(rng);
        const std::size_t q = q_choices[pick_q(rng)];
        const auto B = random_instance(rng, i, n, m);

        try {
            const auto vss = vss_select(B, q, vo);
            const auto brute = brute_force_select(B);
            const auto single = best_singleton(B);
            if (!(brute.metric >= vss.best_metric && vss.best_metric >= single.metric))
                ++ordering;

            for (std::size_t stage = 1; stage < vss.stages.size(); ++stage) {
                std::set<std::uint64_t> seen;
                for (const Survivor* s : vss.stages[stage].ordered()) {
                    const Survivor* parent = vss.stages[s->parent->stage].find(s->parent->state);
                    if (parent == nullptr || !(s->metric > parent->metric))
                        ++monotonic;

                    const auto expected_state = state_key(state_of(s->accumulated, q), q);
                    if (!seen.insert(s->state).second || expected_state != s->state)
                        ++uniqueness;

                    const auto scratch = accumulated_signal(B, s->activation);
                    for (std::size_t u = 0; u < scratch.size(); ++u)
                        if (std::abs(scratch[u] - s->accumulated[u]) > 1e-10 * std::abs(scratch[u]))
                            ++drift;
                    if (!relative_equal(maxmin_metric(B, s->activation), s->metric, 1e-10))
                        ++drift;
                }
            }

            if (!same_result(vss, vss_select(B, q, vo)))
                ++determinism;
        } catch (const std::exception&) {
            ++errors;
        }
    }

    const std::size_t sweep = quantizer_sweep_failures(o.quantizer);
    r.passed = ordering + monotonic + uniqueness + determinism + drift + errors + sweep == 0;
    r.detail = printf_string("%zu instances; failures: ordering %zu, path monotonicity %zu, state uniqueness %zu, "
                             "determinism %zu, incremental Z %zu, exceptions %zu, quantizer edge sweep %zu",
                             instances, ordering, monotonic, uniqueness, determinism, drift, errors, sweep);
    return r;
}

CriterionResult single_bin(const Options& o)
{
    CriterionResult r{Criterion::single_bin_degeneracy, "Q=1 degeneracy (one survivor per stage, M=1)", false, {}, 0.0};
    const std::size_t instances = scaled(100, 30, o);
    std::mt19937_64 rng(criterion_seed(o, Criterion::single_bin_degeneracy));
    std::uniform_int_distribution<std::size_t> pick_n(1, 40);
    VssOptions vo;
    vo.quantizer = o.quantizer;

    std::size_t violations = 0;
    std::size_t max_survivors = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        auto config = reference_config(pick_n(rng), 1);
        config.phase_bins = 1;
        const auto B = build_channel_matrix(config, sample_users(rng(), config));
        const auto res = vss_select(B, 1, vo);
        for (auto s : res.trace.survivors_per_stage) {
            max_survivors = std::max(max_survivors, s);
            if (s > 1)
                ++violations;
        }
    }
    r.passed = violations == 0;
    r.detail = printf_string("%zu instances, max survivors in any stage %zu, violations %zu", instances,
                             max_survivors, violations);
    return r;
}

} // namespace

std::vector<Criterion> all_criteria()
{
    return {Criterion::oracle_single_user, Criterion::oracle_multi_user, Criterion::complexity_bound,
            Criterion::baseline_dominance, Criterion::convergence_shape,  Criterion::rate_vs_n_trend,
            Criterion::invariant_suite,    Criterion::single_bin_degeneracy};
}

std::vector<Criterion> oracle_and_invariant_criteria()
{
    return {Criterion::oracle_single_user, Criterion::oracle_multi_user, Criterion::complexity_bound,
            Criterion::invariant_suite, Criterion::single_bin_degeneracy};
}

CriterionResult run_criterion(Criterion c, const Options& options)
{
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    switch (c) {
    case Criterion::oracle_single_user:
        r = oracle_single_user(options);
        break;
    case Criterion::oracle_multi_user:
        r = oracle_multi_user(options);
        break;
    case Criterion::complexity_bound:
        r = complexity(options);
        break;
    case Criterion::baseline_dominance:
        r = baseline_dominance(options);
        break;
    case Criterion::convergence_shape:
        r = convergence_shape(options);
        break;
    case Criterion::rate_vs_n_trend:
        r = rate_vs_n(options);
        break;
    case Criterion::invariant_suite:
        r = invariant_suite(options);
        break;
    case Criterion::single_bin_degeneracy:
        r = single_bin(options);
        break;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> run(const std::vector<Criterion>& criteria, const Options& options,
                                 const std::function<void(const CriterionResult&)>& on_result)
{
    std::vector<CriterionResult> out;
    for (auto c : criteria) {
        CriterionResult r;
        try {
            r = run_criterion(c, options);
        } catch (const std::exception& e) {
            r.id = c;
            r.name = "criterion " + std::to_string(static_cast<int>(c));
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        if (on_result)
            on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_line(const CriterionResult& r)
{
    return printf_string("[%s] C%d %s: %s (%.2fs)", r.passed ? "PASS" : "FAIL", static_cast<int>(r.id),
                         r.name.c_str(), r.detail.c_str(), r.seconds);
}

std::size_t faulty_quantizer(double phi, std::size_t q_bins)
{
    return (quantize_phase(phi, q_bins) + 1) % q_bins;
}

} // namespace pavss::verify
