#include "pavss/trellis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pavss {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bin_edge(std::size_t k, std::size_t q_bins)
{
    return -std::numbers::pi + kTwoPi * static_cast<double>(k) / static_cast<double>(q_bins);
}

std::size_t apply_quantizer(const VssOptions& options, double phi, std::size_t q_bins)
{
    const std::size_t k = options.quantizer ? options.quantizer(phi, q_bins) : quantize_phase(phi, q_bins);
    if (k >= q_bins)
        throw std::out_of_range("quantizer returned a bin outside [0, Q)");
    return k;
}

double phase_of(const cplx& z)
{
    return (z == cplx{0.0, 0.0}) ? 0.0 : std::arg(z);
}

std::uint64_t key_of(std::span<const cplx> z, std::size_t q_bins, const VssOptions& options)
{
    std::uint64_t key = 0;
    for (const auto& zm : z)
        key = key * q_bins + apply_quantizer(options, phase_of(zm), q_bins);
    return key;
}

void check_against_scratch(const ChannelMatrix& B, const Survivor& s)
{
    const auto scratch = accumulated_signal(B, s.activation);
    for (std::size_t m = 0; m < scratch.size(); ++m) {
        const double err = std::abs(scratch[m] - s.accumulated[m]);
        const double ref = std::max(std::abs(scratch[m]), 1e-300);
        if (err > 1e-10 * ref && err > 1e-300)
            throw std::logic_error("vss: incremental accumulated signal drifted from recomputation");
    }
}

} // namespace

std::size_t quantize_phase(double phi, std::size_t q_bins)
{
    if (q_bins == 0)
        throw std::invalid_argument("quantize_phase: Q must be >= 1");
    if (!std::isfinite(phi))
        throw std::invalid_argument("quantize_phase: phase must be finite");

    double w = phi - kTwoPi * std::floor((phi + std::numbers::pi) / kTwoPi);
    if (w >= std::numbers::pi)
        w -= kTwoPi;
    if (w < -std::numbers::pi)
        w += kTwoPi;

    const double width = kTwoPi / static_cast<double>(q_bins);
    auto k = static_cast<std::size_t>(std::clamp(std::floor((w + std::numbers::pi) / width), 0.0,
                                                 static_cast<double>(q_bins - 1)));
    // Snap to the edge convention when floor() lands one bin off.
    while (k > 0 && w < bin_edge(k, q_bins))
        --k;
    while (k + 1 < q_bins && w >= bin_edge(k + 1, q_bins))
        ++k;
    return k;
}

TrellisStateId state_of(std::span<const cplx> accumulated, std::size_t q_bins)
{
    TrellisStateId id;
    id.bins.reserve(accumulated.size());
    for (const auto& z : accumulated)
        id.bins.push_back(quantize_phase(phase_of(z), q_bins));
    return id;
}

std::uint64_t state_key(const TrellisStateId& state, std::size_t q_bins)
{
    std::uint64_t key = 0;
    for (auto b : state.bins) {
        if (b >= q_bins)
            throw std::out_of_range("state_key: bin outside [0, Q)");
        key = key * q_bins + b;
    }
    return key;
}

TrellisStateId state_from_key(std::uint64_t key, std::size_t n_users, std::size_t q_bins)
{
    TrellisStateId id;
    id.bins.assign(n_users, 0);
    for (std::size_t m = n_users; m-- > 0;) {
        id.bins[m] = static_cast<std::size_t>(key % q_bins);
        key /= q_bins;
    }
    return id;
}

std::uint64_t state_space_size(std::size_t q_bins, std::size_t n_users)
{
    if (q_bins == 0)
        throw std::invalid_argument("state_space_size: Q must be >= 1");
    std::uint64_t total = 1;
    for (std::size_t m = 0; m < n_users; ++m) {
        if (total > std::numeric_limits<std::uint64_t>::max() / q_bins)
            throw std::overflow_error("state_space_size: Q^M exceeds 64 bits");
        total *= q_bins;
    }
    return total;
}

// ---------------------------------------------------------------------------

SurvivorTable::SurvivorTable(std::size_t stage, std::uint64_t state_count)
    : stage_(stage), state_count_(state_count)
{
    if (state_count_ <= kDenseStateLimit)
        slots_.assign(static_cast<std::size_t>(state_count_), -1);
}

std::optional<std::size_t> SurvivorTable::index_of(std::uint64_t state) const
{
    if (state >= state_count_)
        throw std::out_of_range("SurvivorTable: state outside the state space");
    if (is_dense()) {
        const auto slot = slots_[static_cast<std::size_t>(state)];
        if (slot < 0)
            return std::nullopt;
        return static_cast<std::size_t>(slot);
    }
    const auto it = sparse_.find(state);
    if (it == sparse_.end())
        return std::nullopt;
    return it->second;
}

const Survivor* SurvivorTable::find(std::uint64_t state) const
{
    const auto idx = index_of(state);
    return idx ? &entries_[*idx] : nullptr;
}

bool SurvivorTable::would_install(std::uint64_t state, double metric, std::size_t newest) const
{
    const auto idx = index_of(state);
    if (!idx)
        return true;
    const Survivor& incumbent = entries_[*idx];
    if (metric != incumbent.metric)
        return metric > incumbent.metric;
    return newest < incumbent.newest;
}

bool SurvivorTable::offer(Survivor candidate)
{
    if (!would_install(candidate.state, candidate.metric, candidate.newest))
        return false;
    const auto state = candidate.state;
    if (const auto idx = index_of(state)) {
        entries_[*idx] = std::move(candidate);
        return true;
    }
    const auto pos = static_cast<std::int64_t>(entries_.size());
    entries_.push_back(std::move(candidate));
    if (is_dense())
        slots_[static_cast<std::size_t>(state)] = pos;
    else
        sparse_.emplace(state, static_cast<std::size_t>(pos));
    return true;
}

std::vector<const Survivor*> SurvivorTable::ordered() const
{
    std::vector<const Survivor*> out;
    out.reserve(entries_.size());
    if (is_dense()) {
        for (auto slot : slots_)
            if (slot >= 0)
                out.push_back(&entries_[static_cast<std::size_t>(slot)]);
    } else {
        for (const auto& [state, idx] : sparse_)
            out.push_back(&entries_[idx]);
    }
    return out;
}

// ---------------------------------------------------------------------------

SurvivorTable initial_table(const ChannelMatrix& B, std::size_t q_bins)
{
    SurvivorTable table(0, state_space_size(q_bins, B.n_users()));
    Survivor root;
    root.activation = ActivationVector(B.n_antennas());
    root.accumulated.assign(B.n_users(), cplx{0.0, 0.0});
    root.metric = 0.0;
    root.stage = 0;
    root.state = state_key(state_of(root.accumulated, q_bins), q_bins);
    table.offer(std::move(root));
    return table;
}

StageExpansion stage_expand(const SurvivorTable& previous, const ChannelMatrix& B, std::size_t q_bins,
                            const VssOptions& options)
{
    const std::size_t stage = previous.stage() + 1;
    const std::size_t n_users = B.n_users();
    const std::size_t n_antennas = B.n_antennas();
    const auto inv_count = 1.0 / static_cast<double>(stage);

    StageExpansion out{SurvivorTable(stage, previous.state_count()), 0, 0};
    std::vector<cplx> z(n_users);

    for (const Survivor* parent : previous.ordered()) {
        for (std::size_t n = 0; n < n_antennas; ++n) {
            if (parent->activation[n])
                continue;

            double worst = std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < n_users; ++m) {
                z[m] = parent->accumulated[m] + B(m, n);
                const double p = z[m].real() * z[m].real() + z[m].imag() * z[m].imag();
                worst = std::min(worst, p);
            }
            const double metric = worst * inv_count;
            ++out.evaluations;

            if (!(metric > parent->metric))
                continue;
            ++out.gate_passed;

            const std::uint64_t state = key_of(z, q_bins, options);
            if (!out.table.would_install(state, metric, n))
                continue;

            Survivor s;
            s.activation = parent->activation.with(n);
            s.accumulated = z;
            s.metric = metric;
            s.stage = stage;
            s.state = state;
            s.parent = ParentRef{previous.stage(), parent->state};
            s.newest = n;
            if (options.check_incremental)
                check_against_scratch(B, s);
            out.table.offer(std::move(s));
        }
    }
    return out;
}

VssResult vss_select(const ChannelMatrix& B, std::size_t q_bins, const VssOptions& options)
{
    if (q_bins == 0)
        throw std::invalid_argument("vss_select: Q must be >= 1");

    VssResult result;
    result.stages.push_back(initial_table(B, q_bins));

    auto& trace = result.trace;
    double best_exact = -1.0;
    const Survivor* best = nullptr;

    for (std::size_t stage = 1; stage <= B.n_antennas(); ++stage) {
        StageExpansion step = stage_expand(result.stages.back(), B, q_bins, options);
        trace.metric_evaluations += step.evaluations;
        if (step.table.empty())
            break;

        trace.evaluations_per_stage.push_back(step.evaluations);
        trace.gate_passed_per_stage.push_back(step.gate_passed);
        trace.survivors_per_stage.push_back(step.table.size());
        result.stages.push_back(std::move(step.table));
        trace.termination_stage = stage;
    }

    // Cross-stage pick on metrics recomputed from scratch, so the reported
    // value is bit-identical to maxmin_metric() on the returned activation.
    for (std::size_t stage = 1; stage < result.stages.size(); ++stage) {
        for (const Survivor* s : result.stages[stage].ordered()) {
            const double exact = maxmin_metric(B, s->activation);
            if (exact > best_exact) {
                best_exact = exact;
                best = s;
                trace.best_stage = stage;
            }
        }
        trace.running_best.push_back(best_exact);
    }

    if (best == nullptr)
        throw std::logic_error("vss_select: no stage-1 survivor");

    result.best_activation = best->activation;
    result.best_metric = best_exact;
    result.best_state = best->state;
    return result;
}

std::vector<const Survivor*> survivor_path(const VssResult& result, std::size_t stage, std::uint64_t state)
{
    std::vector<const Survivor*> path;
    if (stage == 0 || stage >= result.stages.size())
        throw std::out_of_range("survivor_path: stage not present in result");
    const Survivor* s = result.stages[stage].find(state);
    if (s == nullptr)
        throw std::out_of_range("survivor_path: no survivor in requested state");
    while (s != nullptr && s->stage >= 1) {
        path.push_back(s);
        if (!s->parent || s->parent->stage == 0)
            break;
        s = result.stages[s->parent->stage].find(s->parent->state);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace pavss
