#ifndef PAVSS_TRELLIS_HPP
#define PAVSS_TRELLIS_HPP

#include "pavss/channel.hpp"
#include "pavss/metric.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace pavss {

/**
 * Viterbi state selection over pinch activations.
 *
 * Stage tau holds activations with exactly tau active pinches. The state of
 * an activation is the M-tuple of quantized phases of its per-user
 * accumulated signals, so each stage has at most Q^M survivors. A survivor
 * is extended by one inactive pinch at a time; the extension is forwarded
 * only if its worst-user metric strictly exceeds the parent's, and among
 * the forwarded candidates landing in the same state only the best one is
 * kept. The run stops at the first stage with no forwarded candidate, and
 * the answer is the best survivor over all stages.
 */

/// Bin index k with phi in [-pi + 2 pi k / Q, -pi + 2 pi (k+1) / Q) after
/// wrapping phi into [-pi, pi). phi == pi wraps to bin 0.
std::size_t quantize_phase(double phi, std::size_t q_bins);

/// Replaceable quantizer; used by the verification harness to inject faults.
using PhaseQuantizer = std::function<std::size_t(double phi, std::size_t q_bins)>;

struct TrellisStateId {
    std::vector<std::size_t> bins;

    friend bool operator==(const TrellisStateId&, const TrellisStateId&) = default;
};

/// Per-user bins of arg(Z_m); arg(0) is taken as 0.
TrellisStateId state_of(std::span<const cplx> accumulated, std::size_t q_bins);

/// Mixed-radix index of a state, user 0 most significant, so key order
/// matches lexicographic order of the bins.
std::uint64_t state_key(const TrellisStateId& state, std::size_t q_bins);
TrellisStateId state_from_key(std::uint64_t key, std::size_t n_users, std::size_t q_bins);

/// Q^M; throws std::overflow_error if it does not fit in 64 bits.
std::uint64_t state_space_size(std::size_t q_bins, std::size_t n_users);

struct ParentRef {
    std::size_t stage = 0;
    std::uint64_t state = 0;
};

inline constexpr std::size_t kNoAntenna = static_cast<std::size_t>(-1);

struct Survivor {
    ActivationVector activation;
    std::vector<cplx> accumulated;
    double metric = 0.0;
    std::size_t stage = 0;
    std::uint64_t state = 0;
    std::optional<ParentRef> parent;
    std::size_t newest = kNoAntenna;
};

/// One survivor per state. Dense slots up to kDenseStateLimit states,
/// ordered map above.
class SurvivorTable {
public:
    static constexpr std::uint64_t kDenseStateLimit = 4096;

    SurvivorTable(std::size_t stage, std::uint64_t state_count);

    std::size_t stage() const { return stage_; }
    std::uint64_t state_count() const { return state_count_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    bool is_dense() const { return !slots_.empty(); }

    const Survivor* find(std::uint64_t state) const;

    /// True if a candidate with this metric and newest antenna would replace
    /// the current occupant of `state` (or the state is free). Equal metrics
    /// go to the smaller newest index; full ties keep the incumbent.
    bool would_install(std::uint64_t state, double metric, std::size_t newest) const;

    /// Applies the survivor rule; returns whether the candidate was installed.
    bool offer(Survivor candidate);

    /// Survivors in ascending state order.
    std::vector<const Survivor*> ordered() const;

private:
    std::optional<std::size_t> index_of(std::uint64_t state) const;

    std::size_t stage_;
    std::uint64_t state_count_;
    std::vector<std::int64_t> slots_;
    std::map<std::uint64_t, std::size_t> sparse_;
    std::vector<Survivor> entries_;
};

struct VssOptions {
    /// Defaults to quantize_phase.
    PhaseQuantizer quantizer;
    /// Recompute Z from scratch for every installed survivor and throw
    /// std::logic_error if it drifts from the incremental value by > 1e-10.
    bool check_incremental = false;
};

struct VssTrace {
    /// Index tau - 1 holds the best metric over all survivors at stages <= tau.
    std::vector<double> running_best;
    std::size_t termination_stage = 0;
    std::size_t best_stage = 0;
    std::uint64_t metric_evaluations = 0;
    std::vector<std::size_t> survivors_per_stage;
    std::vector<std::uint64_t> evaluations_per_stage;
    /// Candidates that passed the improvement gate, before the survivor rule.
    std::vector<std::uint64_t> gate_passed_per_stage;
};

struct VssResult {
    ActivationVector best_activation;
    double best_metric = 0.0;
    std::uint64_t best_state = 0;
    VssTrace trace;
    /// stages[0] is the empty reference stage; stages[tau] for tau = 1..T.
    std::vector<SurvivorTable> stages;
};

/// Stage-0 table: the all-zero activation with metric 0 in the phase-0 state.
SurvivorTable initial_table(const ChannelMatrix& B, std::size_t q_bins);

struct StageExpansion {
    SurvivorTable table;
    std::uint64_t evaluations = 0;
    std::uint64_t gate_passed = 0;
};

/// One transition round from stage tau - 1 to tau.
StageExpansion stage_expand(const SurvivorTable& previous, const ChannelMatrix& B, std::size_t q_bins,
                            const VssOptions& options = {});

VssResult vss_select(const ChannelMatrix& B, std::size_t q_bins, const VssOptions& options = {});

/// Survivors from stage 1 up to (stage, state), following parent links.
std::vector<const Survivor*> survivor_path(const VssResult& result, std::size_t stage, std::uint64_t state);

} // namespace pavss

#endif // PAVSS_TRELLIS_HPP
